#include "shq/layout.hpp"

#include <string>

namespace shq {

namespace {

// Keeps 2^L node slots comfortably allocatable and ids inside ElementId.
constexpr int kMaxLevels = 31;

}  // namespace

std::string_view to_string(LayoutKind kind) {
  return kind == LayoutKind::naive ? "naive" : "memopt";
}

TreeLayout TreeLayout::naive(int levels) {
  if (levels < 1 || levels > kMaxLevels) {
    throw QueueError(QueueErrc::invalid_argument,
                     "naive layout needs 1 <= levels <= " + std::to_string(kMaxLevels) +
                         ", got " + std::to_string(levels));
  }
  return TreeLayout(LayoutKind::naive, levels);
}

TreeLayout TreeLayout::memopt(int levels) {
  if (levels < 3 || levels > kMaxLevels) {
    throw QueueError(QueueErrc::invalid_argument,
                     "memory-optimized layout needs 3 <= levels <= " +
                         std::to_string(kMaxLevels) + ", got " + std::to_string(levels));
  }
  return TreeLayout(LayoutKind::memopt, levels);
}

void TreeLayout::check_level(int level) const {
  if (level < 0 || level >= levels_) {
    throw QueueError(QueueErrc::invalid_argument,
                     "level " + std::to_string(level) + " outside [0, " +
                         std::to_string(levels_ - 1) + "]");
  }
}

std::size_t TreeLayout::slots(int level) const {
  check_level(level);
  if (kind_ == LayoutKind::memopt && level == levels_ - 1) {
    return std::size_t{1} << (levels_ - 3);
  }
  return std::size_t{1} << level;
}

std::size_t TreeLayout::total_slots() const {
  std::size_t total = 0;
  for (int level = 0; level < levels_; ++level) total += slots(level);
  return total;
}

std::size_t TreeLayout::node_of(ElementId id, int level) const {
  check_level(level);
  if (id >= capacity()) {
    throw QueueError(QueueErrc::invalid_argument,
                     "id " + std::to_string(id) + " outside capacity " +
                         std::to_string(capacity()));
  }
  const int id_bits = levels_ - 1;
  if (kind_ == LayoutKind::memopt && level == levels_ - 1) {
    // Four ids per leaf: drop the two lowest bits.
    return static_cast<std::size_t>(id) >> 2;
  }
  return static_cast<std::size_t>(id) >> (id_bits - level);
}

ChildSlots TreeLayout::children(int level, std::size_t index) const {
  check_level(level);
  ChildSlots out;
  if (level == levels_ - 1) return out;
  if (kind_ == LayoutKind::memopt && level == levels_ - 2) {
    out.index[0] = index >> 1;
    out.count = 1;
    return out;
  }
  out.index = {2 * index, 2 * index + 1};
  out.count = 2;
  return out;
}

ChildSlots TreeLayout::parents(int level, std::size_t index) const {
  check_level(level);
  ChildSlots out;
  if (level == 0) return out;
  if (kind_ == LayoutKind::memopt && level == levels_ - 1) {
    out.index = {2 * index, 2 * index + 1};
    out.count = 2;
    return out;
  }
  out.index[0] = index >> 1;
  out.count = 1;
  return out;
}

}  // namespace shq
