#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shq/element.hpp"
#include "shq/layout.hpp"

namespace shq {

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t op_count = 10'000;
  int levels = 6;
  LayoutKind variant = LayoutKind::naive;
  /// Full invariant sweep period in ops; 0 disables. Trees with
  /// levels <= sweep_every_op_levels are swept after every mutation.
  std::size_t sweep_period = 100;
  int sweep_every_op_levels = 6;
};

struct FuzzReport {
  bool ok = true;
  std::size_t ops_applied = 0;
  std::size_t invariant_sweeps = 0;
  std::size_t drained = 0;
  std::string divergence;  // empty on success

  std::string to_text() const;
};

/// Drives a random valid op sequence through an SHQ variant and the oracle,
/// then drains both. Keys must match exactly; ids are compared as sets within
/// each equal-key group. Deterministic per seed.
FuzzReport fuzz_compare(const FuzzOptions& options);

/// Compares two drained sequences. Returns a description of the first
/// mismatch, or an empty string.
std::string compare_drains(const std::vector<Element>& expected, const std::vector<Element>& actual);

}  // namespace shq
