#pragma once

#include <cstdint>
#include <array>
#include <deque>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shq/element.hpp"
#include "shq/structured_heap.hpp"

namespace shq {

enum class OpKind { insert, remove, delete_insert, read, read_top };
enum class Micro { read, compare, write };

std::string_view to_string(OpKind kind);
std::string_view to_string(Micro micro);

/// A queue operation as submitted to the pipeline. `remove`, `read` and
/// `delete_insert` use `element.id` as the target; `delete_insert` reinserts
/// it with `element.key`.
struct PipelineOp {
  OpKind kind = OpKind::insert;
  Element element;
};

/// Outcome of one submitted op, recorded when it finishes.
struct OpEvent {
  std::uint64_t op_id = 0;
  OpKind kind = OpKind::insert;
  std::uint64_t cycle = 0;
  bool error = false;
  std::string message;
  std::optional<Element> result;
};

struct TraceRow {
  std::uint64_t cycle = 0;
  std::uint64_t op_id = 0;
  std::string kind;  // "delete_insert.delete" / "delete_insert.insert" for pair halves
  int stage = 0;
  Micro micro = Micro::read;
  std::string levels;  // e.g. "2", "0+1x2", "1x2"; "-" when the step is idle
};

struct IntervalSummary {
  std::size_t samples = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  double mean = 0.0;
  /// Most frequent interval between back-to-back ops of this kind.
  std::uint64_t steady = 0;
};

struct CycleStats {
  std::uint64_t cycles = 0;
  std::map<OpKind, std::size_t> issued;
  std::map<OpKind, IntervalSummary> intervals;
  /// Issued ops (a delete-insert pair counts once) per elapsed cycle.
  double throughput = 0.0;
};

/// Cycle-level model of the pipelined structured heap queue.
///
/// Each tree level is a pipeline stage that spends one cycle each on read,
/// compare and write. An op issued at cycle t works on stage s during cycles
/// t+3s .. t+3s+2. Deletes also read the two children of their node through
/// the read port of the level below. The scheduler issues every op at the
/// earliest cycle where none of its reads of a level can happen before an
/// older op's write to that level. The insert half of a delete-insert pair
/// trails its delete by one cycle and takes the delete's pending writes by
/// forwarding.
///
/// Fully drained, the tree equals the result of applying the same ops in
/// submission order through StructuredHeap.
class PipelineSim {
 public:
  explicit PipelineSim(StructuredHeap tree);

  /// Schedules `op` and returns its issue cycle (the delete half's cycle for
  /// a delete-insert pair).
  std::uint64_t submit(const PipelineOp& op);
  /// Issue cycle `kind` would get if submitted now.
  std::uint64_t earliest_issue(OpKind kind) const;

  void tick();
  void run_until_idle();
  /// Ticks until every submitted op has committed its level-0 write, so the
  /// top port reflects all of them.
  void settle_top();

  /// One-cycle read of the root node.
  std::optional<Element> read_top_port() const { return tree_.top(); }

  bool idle() const { return flows_.empty() && tops_.empty(); }
  std::uint64_t cycle() const noexcept { return cycle_; }
  const StructuredHeap& tree() const noexcept { return tree_; }
  /// Elements held in insert registers below the root.
  std::vector<Element> carried_elements() const;
  /// True when no op is working on stage 0 in the current cycle.
  bool stage0_free() const;

  const std::vector<OpEvent>& events() const noexcept { return events_; }
  CycleStats drain_stats() const;

  void enable_trace(bool on) { trace_on_ = on; }
  const std::vector<TraceRow>& trace() const noexcept { return trace_; }
  void write_trace_csv(std::ostream& out) const;

 private:
  enum class Role { insert, remove, read };

  struct Flow {
    std::uint64_t op_id = 0;
    OpKind kind = OpKind::insert;
    Role role = Role::insert;
    std::uint64_t issue = 0;
    Element traveler;  // element being inserted, or the target id
    bool done = false;
    bool located = false;
    NodePos vacancy;
    std::optional<Element> removed;
    std::optional<Element> seen;
    std::array<std::optional<Element>, 2> kids;
    ChildSlots kid_index;
    std::optional<NodePos> next_vacancy;
    bool has_pending = false;
    NodePos pending_pos;
    std::optional<Element> pending_value;
    const Flow* partner = nullptr;
  };

  enum class Port { own, lower, shared };

  struct PortUse {
    int own_reads = 0;
    int lower_reads = 0;
    int writes = 0;
  };

  std::uint64_t earliest_for(Role role) const;
  void reserve(Role role, std::uint64_t issue);
  void step(Flow& flow, std::size_t position);
  std::optional<Element> read_node(const Flow& flow, std::size_t position, NodePos pos,
                                   Port port);
  void write_node(NodePos pos, const std::optional<Element>& value);
  void finish(Flow& flow, bool error, std::string message, std::optional<Element> result);
  std::string kind_label(const Flow& flow) const;

  StructuredHeap tree_;
  int levels_;
  std::uint64_t cycle_ = 0;
  std::uint64_t next_op_id_ = 0;
  std::uint64_t last_issue_ = 0;
  std::vector<std::uint64_t> last_write_;  // per level, absolute cycle
  std::deque<Flow> flows_;
  std::deque<std::pair<std::uint64_t, std::uint64_t>> tops_;  // (issue, op id)
  std::map<int, PortUse> ports_;
  std::vector<OpEvent> events_;
  std::vector<std::pair<OpKind, std::uint64_t>> issues_;
  bool trace_on_ = false;
  std::vector<TraceRow> trace_;
};

}  // namespace shq
