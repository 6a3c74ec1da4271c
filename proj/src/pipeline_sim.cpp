#include "shq/pipeline_sim.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace shq {

namespace {

constexpr std::uint64_t kStepsPerStage = 3;

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::insert: return "insert";
    case OpKind::remove: return "delete";
    case OpKind::delete_insert: return "delete_insert";
    case OpKind::read: return "read";
    case OpKind::read_top: return "read_top";
  }
  return "?";
}

std::string_view to_string(Micro micro) {
  switch (micro) {
    case Micro::read: return "r";
    case Micro::compare: return "c";
    case Micro::write: return "w";
  }
  return "?";
}

PipelineSim::PipelineSim(StructuredHeap tree)
    : tree_(std::move(tree)),
      levels_(tree_.levels()),
      last_write_(static_cast<std::size_t>(tree_.levels()), 0) {}

// Reads of level X happen at issue + read_offset(X); writes at issue + 3X + 2.
std::uint64_t PipelineSim::earliest_for(Role role) const {
  std::uint64_t t = std::max(cycle_ + 1, last_issue_ + 1);
  for (int level = 0; level < levels_; ++level) {
    std::uint64_t offset = kStepsPerStage * static_cast<std::uint64_t>(level);
    if (role == Role::remove && level > 0) offset -= kStepsPerStage;  // child read from above
    const std::uint64_t written = last_write_[static_cast<std::size_t>(level)];
    if (written >= t + offset) t = written - offset + 1;
  }
  return t;
}

void PipelineSim::reserve(Role role, std::uint64_t issue) {
  if (role != Role::read) {
    for (int level = 0; level < levels_; ++level) {
      last_write_[static_cast<std::size_t>(level)] =
          issue + kStepsPerStage * static_cast<std::uint64_t>(level) + 2;
    }
  }
  last_issue_ = issue;
}

std::uint64_t PipelineSim::earliest_issue(OpKind kind) const {
  switch (kind) {
    case OpKind::insert: return earliest_for(Role::insert);
    case OpKind::read: return earliest_for(Role::read);
    case OpKind::remove:
    case OpKind::delete_insert: return earliest_for(Role::remove);
    case OpKind::read_top: return std::max(cycle_ + 1, last_issue_);
  }
  return cycle_ + 1;
}

std::uint64_t PipelineSim::submit(const PipelineOp& op) {
  const std::uint64_t id = next_op_id_++;
  if (op.element.id >= tree_.capacity()) {
    throw QueueError(QueueErrc::invalid_argument,
                     "id " + std::to_string(op.element.id) + " outside capacity");
  }
  if (op.kind == OpKind::insert || op.kind == OpKind::delete_insert) {
    tree_.validate_key(op.element.key);
  }

  if (op.kind == OpKind::read_top) {
    const std::uint64_t t = earliest_issue(OpKind::read_top);
    tops_.emplace_back(t, id);
    issues_.emplace_back(op.kind, t);
    return t;
  }

  Flow flow;
  flow.op_id = id;
  flow.kind = op.kind;
  flow.traveler = op.element;

  if (op.kind == OpKind::delete_insert) {
    const std::uint64_t t_delete = earliest_for(Role::remove);
    const std::uint64_t t_insert = std::max(t_delete + 1, earliest_for(Role::insert));
    if (t_insert != t_delete + 1) {
      throw std::logic_error("insert half cannot trail its delete by one cycle");
    }
    flow.role = Role::remove;
    flow.issue = t_delete;
    reserve(Role::remove, t_delete);
    flows_.push_back(flow);
    const Flow* partner = &flows_.back();

    Flow half = flow;
    half.role = Role::insert;
    half.issue = t_insert;
    half.partner = partner;
    reserve(Role::insert, t_insert);
    flows_.push_back(half);
    issues_.emplace_back(op.kind, t_delete);
    return t_delete;
  }

  flow.role = op.kind == OpKind::insert ? Role::insert
              : op.kind == OpKind::read ? Role::read
                                        : Role::remove;
  flow.issue = earliest_for(flow.role);
  reserve(flow.role, flow.issue);
  flows_.push_back(flow);
  issues_.emplace_back(op.kind, flow.issue);
  return flow.issue;
}

std::string PipelineSim::kind_label(const Flow& flow) const {
  std::string label(to_string(flow.kind));
  if (flow.kind == OpKind::delete_insert) {
    label += flow.role == Role::remove ? ".delete" : ".insert";
  }
  return label;
}

void PipelineSim::finish(Flow& flow, bool error, std::string message,
                         std::optional<Element> result) {
  flow.done = true;
  // The pair reports once, from its insert half.
  if (flow.kind == OpKind::delete_insert && flow.role == Role::remove && !error) return;
  events_.push_back({flow.op_id, flow.kind, cycle_, error, std::move(message), result});
}

std::optional<Element> PipelineSim::read_node(const Flow& flow, std::size_t position,
                                              NodePos pos, Port port) {
  if (port != Port::shared) {
    auto& use = ports_[pos.level];
    int& count = port == Port::lower ? use.lower_reads : use.own_reads;
    if (++count > 1) {
      throw std::logic_error("read port conflict on level " + std::to_string(pos.level) +
                             " at cycle " + std::to_string(cycle_));
    }
  }
  // No older op may still have a write to this level ahead of it.
  for (std::size_t i = 0; i < position; ++i) {
    const Flow& older = flows_[i];
    if (older.role == Role::read || &older == flow.partner) continue;
    const std::uint64_t write_at =
        older.issue + kStepsPerStage * static_cast<std::uint64_t>(pos.level) + 2;
    if (write_at >= cycle_) {
      throw std::logic_error("read-after-write hazard on level " + std::to_string(pos.level) +
                             " at cycle " + std::to_string(cycle_));
    }
  }
  if (flow.partner != nullptr && flow.partner->has_pending && flow.partner->pending_pos == pos) {
    return flow.partner->pending_value;
  }
  return tree_.node(pos);
}

void PipelineSim::write_node(NodePos pos, const std::optional<Element>& value) {
  if (++ports_[pos.level].writes > 1) {
    throw std::logic_error("write port conflict on level " + std::to_string(pos.level) +
                           " at cycle " + std::to_string(cycle_));
  }
  tree_.set_node(pos, value);
}

void PipelineSim::step(Flow& flow, std::size_t position) {
  const std::uint64_t rel = cycle_ - flow.issue;
  const int stage = static_cast<int>(rel / kStepsPerStage);
  const auto micro = static_cast<Micro>(rel % kStepsPerStage);
  std::string touched = "-";
  const bool last_stage = stage == levels_ - 1;

  if (!flow.done) {
    switch (flow.role) {
      case Role::insert:
      case Role::read: {
        const NodePos pos{stage, tree_.layout().node_of(flow.traveler.id, stage)};
        if (micro == Micro::read) {
          flow.seen = read_node(flow, position, pos, Port::own);
          touched = std::to_string(stage);
        } else if (micro == Micro::compare) {
          touched = std::to_string(stage);
          if (flow.role == Role::read) {
            if (flow.seen && flow.seen->id == flow.traveler.id) {
              finish(flow, false, {}, flow.seen);
            } else if (last_stage) {
              finish(flow, false, "not found", std::nullopt);
            }
          } else {
            flow.has_pending = true;
            flow.pending_pos = pos;
            if (!flow.seen) {
              flow.pending_value = flow.traveler;
            } else if (flow.traveler.key < flow.seen->key) {
              flow.pending_value = flow.traveler;
              flow.traveler = *flow.seen;
            } else {
              flow.pending_value = flow.seen;
            }
          }
        } else if (flow.role == Role::insert) {
          touched = std::to_string(stage);
          write_node(flow.pending_pos, flow.pending_value);
          flow.has_pending = false;
          if (!flow.seen) {
            finish(flow, false, {}, flow.pending_value);
          } else if (last_stage) {
            finish(flow, true, "overflow: no free node on the path of id " +
                                   std::to_string(flow.traveler.id),
                   std::nullopt);
          }
        }
        break;
      }
      case Role::remove: {
        if (micro == Micro::read) {
          touched.clear();
          if (!flow.located) {
            const NodePos own{stage, tree_.layout().node_of(flow.traveler.id, stage)};
            const auto value = read_node(flow, position, own, Port::own);
            touched = std::to_string(stage);
            if (value && value->id == flow.traveler.id) {
              flow.located = true;
              flow.vacancy = own;
              flow.removed = value;
            }
          }
          flow.kid_index = {};
          if (flow.located && !last_stage) {
            flow.kid_index = tree_.layout().children(stage, flow.vacancy.index);
            // Both children arrive through the lower port as one wide read.
            for (std::size_t k = 0; k < flow.kid_index.count; ++k) {
              flow.kids[k] = read_node(flow, position, {stage + 1, flow.kid_index.index[k]},
                                       k == 0 ? Port::lower : Port::shared);
            }
            if (!touched.empty()) touched += "+";
            touched += std::to_string(stage + 1) + "x" + std::to_string(flow.kid_index.count);
          }
          if (touched.empty()) touched = "-";
        } else if (micro == Micro::compare) {
          touched = std::to_string(stage);
          if (flow.located) {
            std::optional<std::size_t> best;
            for (std::size_t k = 0; k < flow.kid_index.count; ++k) {
              const auto& kid = flow.kids[k];
              if (!kid || tree_.layout().node_of(kid->id, stage) != flow.vacancy.index) continue;
              if (!best || kid->key < flow.kids[*best]->key) best = k;
            }
            flow.has_pending = true;
            flow.pending_pos = flow.vacancy;
            flow.next_vacancy.reset();
            if (best) {
              flow.pending_value = flow.kids[*best];
              flow.next_vacancy = NodePos{stage + 1, flow.kid_index.index[*best]};
            } else {
              flow.pending_value.reset();
            }
          } else if (last_stage) {
            finish(flow, true, "not found: id " + std::to_string(flow.traveler.id),
                   std::nullopt);
          }
        } else {
          if (flow.has_pending) {
            touched = std::to_string(stage);
            write_node(flow.pending_pos, flow.pending_value);
            flow.has_pending = false;
            if (flow.next_vacancy) {
              flow.vacancy = *flow.next_vacancy;
            } else {
              finish(flow, false, {}, flow.removed);
            }
          }
        }
        break;
      }
    }
  }

  if (trace_on_) {
    trace_.push_back({cycle_, flow.op_id, kind_label(flow), stage, micro, touched});
  }
}

void PipelineSim::tick() {
  ++cycle_;
  ports_.clear();
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    Flow& flow = flows_[i];
    if (flow.issue > cycle_) break;
    step(flow, i);
  }
  while (!tops_.empty() && tops_.front().first <= cycle_) {
    events_.push_back({tops_.front().second, OpKind::read_top, cycle_, false, {}, tree_.top()});
    tops_.pop_front();
  }
  // Retire ops whose last stage ended this cycle.
  const std::uint64_t span = kStepsPerStage * static_cast<std::uint64_t>(levels_);
  while (!flows_.empty() && cycle_ + 1 >= flows_.front().issue + span) {
    flows_.pop_front();
  }
}

void PipelineSim::run_until_idle() {
  while (!idle()) tick();
}

void PipelineSim::settle_top() {
  std::uint64_t target = cycle_;
  for (const Flow& flow : flows_) {
    if (flow.role != Role::read) target = std::max(target, flow.issue + 2);
  }
  if (!tops_.empty()) target = std::max(target, tops_.back().first);
  while (cycle_ < target) tick();
}

std::vector<Element> PipelineSim::carried_elements() const {
  std::vector<Element> out;
  for (const Flow& flow : flows_) {
    if (flow.role == Role::insert && !flow.done && flow.issue <= cycle_) {
      out.push_back(flow.traveler);
    }
  }
  return out;
}

bool PipelineSim::stage0_free() const {
  return std::none_of(flows_.begin(), flows_.end(), [&](const Flow& flow) {
    return flow.issue <= cycle_ && cycle_ < flow.issue + kStepsPerStage;
  });
}

CycleStats PipelineSim::drain_stats() const {
  CycleStats stats;
  stats.cycles = cycle_;
  std::map<OpKind, std::map<std::uint64_t, std::size_t>> histogram;
  for (std::size_t i = 0; i < issues_.size(); ++i) {
    const auto [kind, at] = issues_[i];
    ++stats.issued[kind];
    if (i == 0 || issues_[i - 1].first != kind) continue;
    const std::uint64_t gap = at - issues_[i - 1].second;
    auto& summary = stats.intervals[kind];
    summary.min = summary.samples == 0 ? gap : std::min(summary.min, gap);
    summary.max = std::max(summary.max, gap);
    summary.mean += static_cast<double>(gap);
    ++summary.samples;
    ++histogram[kind][gap];
  }
  for (auto& [kind, summary] : stats.intervals) {
    summary.mean /= static_cast<double>(summary.samples);
    std::size_t best = 0;
    for (const auto& [gap, n] : histogram[kind]) {
      if (n > best) {
        best = n;
        summary.steady = gap;
      }
    }
  }
  std::size_t issued = 0;
  for (const auto& [kind, n] : stats.issued) issued += n;
  stats.throughput = cycle_ == 0 ? 0.0 : static_cast<double>(issued) / static_cast<double>(cycle_);
  return stats;
}

void PipelineSim::write_trace_csv(std::ostream& out) const {
  out << "cycle,op_id,kind,stage,micro,level_touched\n";
  for (const TraceRow& row : trace_) {
    out << row.cycle << ',' << row.op_id << ',' << row.kind << ',' << row.stage << ','
        << to_string(row.micro) << ',' << row.levels << '\n';
  }
}

}  // namespace shq
