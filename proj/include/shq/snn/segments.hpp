#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shq/snn/engine.hpp"

namespace shq::snn {

struct SegmentMap {
  /// Label per neuron; labels are numbered in raster order of each segment's
  /// first pixel.
  std::vector<std::uint32_t> labels;
  std::uint32_t count = 0;
  /// Largest circular phase extent of any segment, in ticks.
  Tick max_spread = 0;
};

/// Clusters neurons by firing phase (firing_time - now, circular over
/// `period_ticks`): consecutive sorted phases further apart than `eps_ticks`
/// start a new segment.
SegmentMap extract_segments(std::span<const NeuronRecord> state, Tick now, Tick period_ticks,
                            Tick eps_ticks);

template <EventQueue Queue>
SegmentMap extract_segments(const Engine<Queue>& engine, Tick eps_ticks) {
  return extract_segments(engine.state(), engine.clock().now, engine.tables().period_ticks,
                          eps_ticks);
}

}  // namespace shq::snn
