#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "shq/pipeline_sim.hpp"

namespace shq {

/// Event-queue adapter that runs every operation through the cycle-level
/// pipeline and accounts the cycles spent on delete-insert updates.
///
/// top() lets the pipeline advance until all submitted ops have written the
/// root level, then reads the top port; deeper levels keep working in the
/// background.
class PipelinedQueue {
 public:
  explicit PipelinedQueue(StructuredHeap tree) : sim_(std::move(tree)) {}

  void insert(Element e) { sim_.submit({OpKind::insert, e}); }

  void delete_insert(ElementId id, Key key) {
    const std::uint64_t issue = sim_.submit({OpKind::delete_insert, {id, key}});
    if (updates_ == 0) first_update_issue_ = issue;
    ++updates_;
    // The slot the next pair could take closes this pair's share of the pipe.
    update_span_end_ = sim_.earliest_issue(OpKind::delete_insert);
  }

  std::optional<Element> top() {
    sim_.settle_top();
    check_events();
    return sim_.read_top_port();
  }

  /// Cycles from the first update's issue to the first free update slot after
  /// the last one.
  std::uint64_t update_cycles() const {
    return updates_ == 0 ? 0 : update_span_end_ - first_update_issue_;
  }
  std::uint64_t updates() const noexcept { return updates_; }

  PipelineSim& sim() noexcept { return sim_; }
  const PipelineSim& sim() const noexcept { return sim_; }

 private:
  void check_events() {
    const auto& events = sim_.events();
    for (; checked_events_ < events.size(); ++checked_events_) {
      if (events[checked_events_].error) {
        throw QueueError(QueueErrc::not_found, "pipelined op failed: " +
                                                   events[checked_events_].message);
      }
    }
  }

  PipelineSim sim_;
  std::uint64_t updates_ = 0;
  std::uint64_t first_update_issue_ = 0;
  std::uint64_t update_span_end_ = 0;
  std::size_t checked_events_ = 0;
};

}  // namespace shq
