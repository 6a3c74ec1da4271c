#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shq/element.hpp"
#include "shq/pipeline_sim.hpp"

namespace shq::bench {

/// Baseline queue: an unsorted array indexed by id. Updates are single
/// indexed writes; find-min scans every slot with a `width`-wide comparator
/// front end feeding a comparator tree.
class ScanQueue {
 public:
  struct MinResult {
    Element element;
    std::uint64_t cycles = 0;
  };

  explicit ScanQueue(std::size_t capacity, unsigned width = 16);

  void insert(Element e);
  Element remove(ElementId id);
  void delete_insert(ElementId id, Key new_key);
  /// Smallest key, lowest id among equal keys. Throws QueueError on empty.
  MinResult find_min() const;
  std::vector<Element> contents() const;

  std::size_t size() const noexcept { return count_; }
  std::size_t capacity() const noexcept { return slots_.size(); }
  unsigned width() const noexcept { return width_; }

 private:
  std::vector<std::optional<Key>> slots_;
  std::size_t count_ = 0;
  unsigned width_;
};

/// ceil(n / width) + ceil(log2(width)). Throws std::invalid_argument for n = 0
/// or width = 0.
std::uint64_t scan_find_min_cycles(std::size_t n, unsigned width);

enum class Structure { shq_naive, shq_memopt, scan };
enum class Workload {
  insert,         // fill an empty structure with N elements
  delete_insert,  // random key updates on a full structure
  find_min,       // hold model: find the minimum, then reschedule it
};

std::string_view to_string(Structure s);
std::string_view to_string(Workload w);
std::optional<Structure> parse_structure(std::string_view text);
std::optional<Workload> parse_workload(std::string_view text);

struct BenchOptions {
  std::vector<Structure> structures;
  std::vector<std::uint64_t> sizes;
  std::vector<Workload> workloads;
  std::uint64_t seed = 1;
  /// Measured operations per cell for delete_insert and find_min.
  std::size_t ops = 1000;
  unsigned scan_width = 16;
};

struct BenchRow {
  std::string structure;
  std::uint64_t n = 0;
  int levels = 0;  // 0 for the scan baseline
  std::string workload;
  std::string op;
  double cycles_per_op = 0.0;
  /// FNV-1a over the workload's observable results; equal across
  /// structures that agree.
  std::uint64_t checksum = 0;
};

using BenchReport = std::vector<BenchRow>;

/// Runs every (structure, size, workload) cell through its cycle model.
/// Throws std::invalid_argument unless sizes are ascending and nonzero.
BenchReport sweep(const BenchOptions& options);

inline constexpr std::string_view kBenchCsvHeader =
    "structure,N,L,workload,op,cycles_per_op,checksum";
void write_csv(std::ostream& out, const BenchReport& report);

/// Cycles the pipelined queue needs to serve a find-min: one read of the root
/// register.
inline constexpr std::uint64_t kReadTopCycles = 1;

/// Small schedules on a 4-level tree that show the cascade timing: two
/// inserts, two deletes, and a delete-insert followed by a delete.
enum class ScheduleCase { inserts, deletes, pair_then_delete };

struct ScheduleRun {
  ScheduleCase which;
  /// Issue cycles in order; a delete-insert contributes its delete half and
  /// its insert half.
  std::vector<std::uint64_t> issues;
  PipelineSim sim;
};

std::string_view to_string(ScheduleCase c);
ScheduleRun run_schedule(ScheduleCase which, bool trace = false);

}  // namespace shq::bench
