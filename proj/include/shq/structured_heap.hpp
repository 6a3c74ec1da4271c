#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shq/element.hpp"
#include "shq/layout.hpp"

namespace shq {

/// Position of a node in the memory tree.
struct NodePos {
  int level = 0;
  std::size_t index = 0;

  friend bool operator==(const NodePos&, const NodePos&) = default;
};

/// Result of a read (locate-only) operation.
struct ReadResult {
  std::optional<Element> element;
  int nodes_inspected = 0;
};

/// Structured heap queue, executed one operation at a time.
///
/// Every element lives on the path its id selects (see TreeLayout), the key of
/// an occupied node is never smaller than the key of its parent on that path,
/// and elements always sit as high as their path allows. Keys are compared as
/// unsigned integers of `key_bits` width; an empty node compares as +infinity.
///
/// Ties: during insert descent the incumbent keeps its node; during promotion
/// the left child wins.
class StructuredHeap {
 public:
  explicit StructuredHeap(TreeLayout layout, unsigned key_bits = 64);

  const TreeLayout& layout() const noexcept { return layout_; }
  int levels() const noexcept { return layout_.levels(); }
  std::size_t capacity() const noexcept { return layout_.capacity(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  unsigned key_bits() const noexcept { return key_bits_; }

  void insert(Element e);
  /// Locate-then-promote delete. Returns the removed element.
  Element remove(ElementId id);
  ReadResult read(ElementId id) const;
  std::optional<Element> top() const { return nodes_[0][0]; }
  /// Update primitive: remove(id) followed by insert({id, new_key}).
  void delete_insert(ElementId id, Key new_key);

  // Raw node access for the cycle-level simulator and for checks.
  const std::optional<Element>& node(NodePos pos) const { return nodes_[pos.level][pos.index]; }
  void set_node(NodePos pos, std::optional<Element> value);
  void validate_key(Key key) const;

  /// Full sweep of heap, path, parent-occupancy, uniqueness and count
  /// invariants. Returns a description of the first violation.
  std::optional<std::string> check_invariants() const;

  /// One level per line, "(id:key)" or "--" per node. Memory-optimized leaves
  /// carry their parent wiring as "{p0,p1}".
  std::string dump() const;

  friend bool operator==(const StructuredHeap&, const StructuredHeap&) = default;

 private:
  void check_id(ElementId id) const;

  TreeLayout layout_;
  unsigned key_bits_;
  std::vector<std::vector<std::optional<Element>>> nodes_;
  std::size_t count_ = 0;
};

/// Naive layout queue of `levels` levels.
StructuredHeap make_naive_queue(int levels, unsigned key_bits = 64);
/// Memory-optimized layout queue of `levels` levels (levels >= 3).
StructuredHeap make_memopt_queue(int levels, unsigned key_bits = 64);

}  // namespace shq
