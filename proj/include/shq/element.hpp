#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shq {

using ElementId = std::uint32_t;
using Key = std::uint64_t;

/// A queue entry. In the spiking network the id is a neuron number and the
/// key is its predicted firing time in ticks.
struct Element {
  ElementId id = 0;
  Key key = 0;

  friend bool operator==(const Element&, const Element&) = default;
};

enum class QueueErrc {
  invalid_argument,
  duplicate_id,
  not_found,
  full,
  overflow,
};

class QueueError : public std::runtime_error {
 public:
  QueueError(QueueErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  QueueErrc code() const noexcept { return code_; }

 private:
  QueueErrc code_;
};

}  // namespace shq
