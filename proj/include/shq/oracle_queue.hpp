#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>

#include "shq/element.hpp"

namespace shq {

/// Reference priority queue with delete-by-key: an ordered set of (key, id)
/// plus an id index. Pops are totally ordered by (key, id).
class OracleQueue {
 public:
  void insert(Element e);
  Element remove(ElementId id);
  std::optional<Element> read(ElementId id) const;
  std::optional<Element> top() const;
  void delete_insert(ElementId id, Key new_key);

  std::size_t size() const noexcept { return by_id_.size(); }
  bool empty() const noexcept { return by_id_.empty(); }
  bool contains(ElementId id) const { return by_id_.count(id) != 0; }

 private:
  std::set<std::pair<Key, ElementId>> ordered_;
  std::unordered_map<ElementId, Key> by_id_;
};

}  // namespace shq
