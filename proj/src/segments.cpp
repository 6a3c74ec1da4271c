#include "shq/snn/segments.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace shq::snn {

SegmentMap extract_segments(std::span<const NeuronRecord> state, Tick now, Tick period_ticks,
                            Tick eps_ticks) {
  if (period_ticks == 0) throw std::invalid_argument("period must be positive");
  SegmentMap out;
  out.labels.assign(state.size(), 0);
  if (state.empty()) return out;

  std::vector<std::pair<Tick, std::uint32_t>> phases;
  phases.reserve(state.size());
  for (std::uint32_t i = 0; i < state.size(); ++i) {
    if (state[i].firing_time < now) throw std::invalid_argument("firing time in the past");
    phases.emplace_back((state[i].firing_time - now) % period_ticks, i);
  }
  std::sort(phases.begin(), phases.end());

  // Cluster index per sorted position.
  std::vector<std::uint32_t> cluster(phases.size(), 0);
  std::uint32_t clusters = 1;
  for (std::size_t k = 1; k < phases.size(); ++k) {
    if (phases[k].first - phases[k - 1].first > eps_ticks) ++clusters;
    cluster[k] = clusters - 1;
  }
  // Phases near the end of the period wrap onto the first cluster.
  const Tick wrap_gap = phases.front().first + period_ticks - phases.back().first;
  if (clusters > 1 && wrap_gap <= eps_ticks) {
    const std::uint32_t last = clusters - 1;
    for (auto& c : cluster) {
      if (c == last) c = 0;
    }
    --clusters;
  }

  // Extent of each cluster. Clusters are contiguous runs of the sorted
  // phases, except a wrapped cluster 0 that also owns the tail run.
  std::vector<Tick> first(clusters), last(clusters);
  std::vector<bool> seen(clusters, false);
  std::size_t tail_start = phases.size();
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const std::uint32_t c = cluster[k];
    if (c == 0 && k > 0 && cluster[k - 1] != 0) tail_start = k;
    if (!seen[c]) first[c] = phases[k].first;
    seen[c] = true;
    last[c] = phases[k].first;
  }
  for (std::uint32_t c = 0; c < clusters; ++c) {
    Tick extent = last[c] - first[c];
    if (c == 0 && tail_start < phases.size()) {
      std::size_t head_end = 0;
      while (head_end + 1 < phases.size() && cluster[head_end + 1] == 0) ++head_end;
      extent = phases[head_end].first + period_ticks - phases[tail_start].first;
    }
    out.max_spread = std::max(out.max_spread, extent);
  }

  // Relabel in raster order of first appearance.
  std::vector<std::uint32_t> by_neuron(state.size());
  for (std::size_t k = 0; k < phases.size(); ++k) by_neuron[phases[k].second] = cluster[k];
  std::vector<std::uint32_t> remap(clusters, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < by_neuron.size(); ++i) {
    auto& slot = remap[by_neuron[i]];
    if (slot == std::numeric_limits<std::uint32_t>::max()) slot = out.count++;
    out.labels[i] = slot;
  }
  return out;
}

}  // namespace shq::snn
