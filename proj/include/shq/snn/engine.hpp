#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shq/element.hpp"
#include "shq/snn/model_tables.hpp"
#include "shq/snn/topology.hpp"

namespace shq::snn {

/// What the engine needs from an event queue.
template <typename Q>
concept EventQueue = requires(Q q, Element e, ElementId id, Key key) {
  q.insert(e);
  q.delete_insert(id, key);
  { q.top() } -> std::convertible_to<std::optional<Element>>;
};

/// Per-neuron stored state: absolute predicted firing time and pixel value.
struct NeuronRecord {
  Tick firing_time = 0;
  std::uint8_t pixel = 0;

  friend bool operator==(const NeuronRecord&, const NeuronRecord&) = default;
};

struct SimClock {
  Tick now = 0;
  double tick_seconds = 0.0;
};

struct RunStats {
  std::uint64_t events = 0;
  std::uint64_t neuron_updates = 0;
  /// Remaining-time values beyond the membrane table, read as potential 0.
  std::uint64_t range_clamps = 0;
  /// Potentials pushed past threshold and clamped to it.
  std::uint64_t threshold_clamps = 0;
};

/// Membrane model: potential code of `rec` at the current time.
inline std::uint32_t potential_now(const ModelTables& tables, const SimClock& clock,
                                   const NeuronRecord& rec, RunStats* stats = nullptr) {
  if (rec.firing_time < clock.now) {
    throw std::logic_error("firing time " + std::to_string(rec.firing_time) +
                           " is in the past (now " + std::to_string(clock.now) + ")");
  }
  Tick dt = rec.firing_time - clock.now;
  if (dt >= tables.membrane.size()) {
    dt = tables.membrane.size() - 1;
    if (stats != nullptr) ++stats->range_clamps;
  }
  return tables.membrane[dt];
}

/// Synapse and inverse membrane models: adds `weight_code` to the potential,
/// or subtracts the threshold when `is_reset`, clamps into [0, threshold] and
/// returns the record with its new firing time.
inline NeuronRecord apply_spike_to(const ModelTables& tables, const SimClock& clock,
                                   NeuronRecord rec, std::uint32_t weight_code, bool is_reset,
                                   RunStats* stats = nullptr) {
  const auto p = static_cast<std::int64_t>(potential_now(tables, clock, rec, stats));
  std::int64_t next = is_reset ? p - kThresholdCode : p + weight_code;
  if (next > static_cast<std::int64_t>(kThresholdCode)) {
    next = kThresholdCode;
    if (stats != nullptr) ++stats->threshold_clamps;
  }
  next = std::max<std::int64_t>(next, 0);
  rec.firing_time = clock.now + tables.inverse[static_cast<std::size_t>(next)];
  return rec;
}

/// Smallest naive-layout depth whose capacity covers `neurons` ids.
inline int levels_for(std::size_t neurons, int min_levels = 1) {
  int levels = 1;
  while ((std::size_t{1} << (levels - 1)) < neurons) ++levels;
  return std::max(levels, min_levels);
}

/// Event-driven oscillator network on an 8-neighbor pixel grid.
///
/// Each event pops the earliest predicted spike, moves the clock to it, and
/// walks the pre-synaptic neuron's synapses: every in-grid neighbor gets the
/// pixel-similarity weight added to its potential, then the pre-synaptic
/// neuron is reset. Every touched neuron is written back to state memory and
/// updated in the queue with a delete-insert.
template <EventQueue Queue>
class Engine {
 public:
  Engine(GridTopology topology, std::span<const std::uint8_t> pixels, const ModelTables& tables,
         Queue queue)
      : topology_(topology), tables_(&tables), queue_(std::move(queue)) {
    if (pixels.empty()) throw std::invalid_argument("image is empty");
    if (pixels.size() != topology_.neuron_count()) {
      throw std::invalid_argument("pixel count does not match the grid");
    }
    clock_.tick_seconds = tables.tick_seconds;
    state_.resize(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i) state_[i].pixel = pixels[i];
  }

  /// Draws each neuron's initial potential uniformly from [0, threshold) and
  /// queues the matching firing time. Deterministic per seed.
  void init_state(std::uint64_t seed) {
    if (initialized_) throw std::logic_error("engine already initialized");
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < state_.size(); ++i) {
      // Top 12 bits: uniform over the 4096 codes below threshold.
      const auto code = static_cast<std::uint32_t>(rng() >> 52);
      state_[i].firing_time = clock_.now + tables_->inverse[code];
      queue_.insert({static_cast<ElementId>(i), state_[i].firing_time});
    }
    initialized_ = true;
  }

  /// Processes the earliest event. Returns the number of neuron updates.
  std::size_t process_event() {
    const std::optional<Element> top = queue_.top();
    if (!top) throw std::logic_error("event queue is empty");
    if (top->key < clock_.now) throw std::logic_error("event queue went back in time");
    const NeuronId pre = top->id;
    if (state_.at(pre).firing_time != top->key) {
      throw std::logic_error("queue and state memory disagree on neuron " + std::to_string(pre));
    }
    clock_.now = top->key;
    ++stats_.events;

    std::size_t updates = 0;
    for (int synapse : kSynapseOrder) {
      const auto hop = topology_.resolve(pre, synapse);
      if (!hop) continue;
      NeuronRecord& rec = state_[hop->post];
      std::uint32_t weight = 0;
      if (!hop->is_reset) {
        weight = tables_->weight[static_cast<std::size_t>(
            std::abs(int{state_[pre].pixel} - int{rec.pixel}))];
      }
      rec = apply_spike_to(*tables_, clock_, rec, weight, hop->is_reset, &stats_);
      queue_.delete_insert(hop->post, rec.firing_time);
      ++updates;
    }
    stats_.neuron_updates += updates;
    return updates;
  }

  /// Processes events while the earliest one is due no later than `t_end`.
  RunStats run_until(Tick t_end) {
    while (true) {
      const std::optional<Element> top = queue_.top();
      if (!top || top->key > t_end) break;
      process_event();
    }
    clock_.now = std::max(clock_.now, t_end);
    return stats_;
  }

  const GridTopology& topology() const noexcept { return topology_; }
  const ModelTables& tables() const noexcept { return *tables_; }
  const SimClock& clock() const noexcept { return clock_; }
  const std::vector<NeuronRecord>& state() const noexcept { return state_; }
  const RunStats& stats() const noexcept { return stats_; }
  Queue& queue() noexcept { return queue_; }
  const Queue& queue() const noexcept { return queue_; }

 private:
  GridTopology topology_;
  const ModelTables* tables_;
  Queue queue_;
  SimClock clock_;
  std::vector<NeuronRecord> state_;
  RunStats stats_;
  bool initialized_ = false;
};

}  // namespace shq::snn
