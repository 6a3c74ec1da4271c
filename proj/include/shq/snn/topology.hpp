#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace shq::snn {

using NeuronId = std::uint32_t;

struct GridOffset {
  int dx = 0;
  int dy = 0;
};

/// Synapse number -> neighbor offset. Synapse 0 is the zero offset (the
/// pre-synaptic neuron itself); 1..8 are the eight neighbors in raster order.
inline constexpr std::array<GridOffset, 9> kSynapseOffsets{{
    {0, 0},
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},           {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
}};

/// Order in which an event walks its synapses: neighbors first, self-reset last.
inline constexpr std::array<int, 9> kSynapseOrder{1, 2, 3, 4, 5, 6, 7, 8, 0};

struct ResolvedSynapse {
  NeuronId post = 0;
  bool is_reset = false;  // offset was zero: post is the pre-synaptic neuron
};

/// 8-neighbor grid without wraparound; raster-order neuron ids.
class GridTopology {
 public:
  GridTopology(std::uint32_t width, std::uint32_t height);

  std::uint32_t width() const noexcept { return width_; }
  std::uint32_t height() const noexcept { return height_; }
  std::uint32_t neuron_count() const noexcept { return width_ * height_; }

  /// Post-synaptic neuron for (pre, synapse), or nullopt when the neighbor is
  /// outside the grid.
  std::optional<ResolvedSynapse> resolve(NeuronId pre, int synapse) const;

  /// Directed neighbor synapses after border trimming.
  std::uint64_t synapse_count() const;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
};

}  // namespace shq::snn
