#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "shq/element.hpp"

namespace shq {

enum class LayoutKind { naive, memopt };

std::string_view to_string(LayoutKind kind);

/// Up to two child slots of a node, left first.
struct ChildSlots {
  std::array<std::size_t, 2> index{};
  std::size_t count = 0;

  const std::size_t* begin() const { return index.data(); }
  const std::size_t* end() const { return index.data() + count; }
};

/// Maps element ids onto node positions of a leveled binary memory tree.
///
/// The naive layout gives every id its own root-to-leaf path: on level l the
/// admissible node is the top l bits of the (L-1)-bit id. The memory-optimized
/// layout keeps that mapping for levels 0..L-2 (so ids differing only in the
/// lowest bit share an internal path) and shrinks the leaf level to 2^(L-3)
/// nodes, each shared by four ids and wired to two parents.
class TreeLayout {
 public:
  static TreeLayout naive(int levels);
  static TreeLayout memopt(int levels);

  LayoutKind kind() const noexcept { return kind_; }
  int levels() const noexcept { return levels_; }

  /// Number of distinct ids, 2^(L-1).
  std::size_t capacity() const noexcept { return std::size_t{1} << (levels_ - 1); }

  std::size_t slots(int level) const;
  std::size_t total_slots() const;

  /// Index of the only node on `level` that `id` may occupy.
  std::size_t node_of(ElementId id, int level) const;

  ChildSlots children(int level, std::size_t index) const;

  /// Parents of a node on `level` (level > 0). Memopt leaves have two.
  ChildSlots parents(int level, std::size_t index) const;

  friend bool operator==(const TreeLayout&, const TreeLayout&) = default;

 private:
  TreeLayout(LayoutKind kind, int levels) : kind_(kind), levels_(levels) {}

  void check_level(int level) const;

  LayoutKind kind_;
  int levels_;
};

}  // namespace shq
