#include "shq/snn/topology.hpp"

#include <stdexcept>
#include <string>

namespace shq::snn {

GridTopology::GridTopology(std::uint32_t width, std::uint32_t height)
    : width_(width), height_(height) {
  if (width == 0 || height == 0) throw std::invalid_argument("grid must be nonempty");
  if (std::uint64_t{width} * height > 0x7fffffffULL) {
    throw std::invalid_argument("grid too large");
  }
}

std::optional<ResolvedSynapse> GridTopology::resolve(NeuronId pre, int synapse) const {
  if (pre >= neuron_count()) {
    throw std::out_of_range("neuron " + std::to_string(pre) + " outside the grid");
  }
  if (synapse < 0 || synapse >= static_cast<int>(kSynapseOffsets.size())) {
    throw std::out_of_range("synapse number " + std::to_string(synapse));
  }
  const GridOffset off = kSynapseOffsets[static_cast<std::size_t>(synapse)];
  const long x = static_cast<long>(pre % width_) + off.dx;
  const long y = static_cast<long>(pre / width_) + off.dy;
  if (x < 0 || y < 0 || x >= static_cast<long>(width_) || y >= static_cast<long>(height_)) {
    return std::nullopt;
  }
  const bool is_reset = off.dx == 0 && off.dy == 0;
  return ResolvedSynapse{static_cast<NeuronId>(y * static_cast<long>(width_) + x), is_reset};
}

std::uint64_t GridTopology::synapse_count() const {
  const std::uint64_t w = width_;
  const std::uint64_t h = height_;
  // Horizontal, vertical and two diagonal neighbor pairs, both directions.
  const std::uint64_t pairs = (w - 1) * h + w * (h - 1) + 2 * (w - 1) * (h - 1);
  return 2 * pairs;
}

}  // namespace shq::snn
