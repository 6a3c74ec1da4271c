#include "shq/structured_heap.hpp"

#include <sstream>
#include <unordered_set>
#include <utility>

namespace shq {

StructuredHeap::StructuredHeap(TreeLayout layout, unsigned key_bits)
    : layout_(layout), key_bits_(key_bits) {
  if (key_bits < 1 || key_bits > 64) {
    throw QueueError(QueueErrc::invalid_argument,
                     "key width must be in [1, 64] bits, got " + std::to_string(key_bits));
  }
  nodes_.reserve(static_cast<std::size_t>(layout_.levels()));
  for (int level = 0; level < layout_.levels(); ++level) {
    nodes_.emplace_back(layout_.slots(level));
  }
}

void StructuredHeap::check_id(ElementId id) const {
  if (id >= capacity()) {
    throw QueueError(QueueErrc::invalid_argument,
                     "id " + std::to_string(id) + " outside capacity " +
                         std::to_string(capacity()));
  }
}

void StructuredHeap::validate_key(Key key) const {
  if (key_bits_ < 64 && (key >> key_bits_) != 0) {
    throw QueueError(QueueErrc::invalid_argument,
                     "key " + std::to_string(key) + " wider than " +
                         std::to_string(key_bits_) + " bits");
  }
}

void StructuredHeap::set_node(NodePos pos, std::optional<Element> value) {
  auto& slot = nodes_[pos.level][pos.index];
  if (slot && !value) --count_;
  if (!slot && value) ++count_;
  slot = value;
}

void StructuredHeap::insert(Element e) {
  check_id(e.id);
  validate_key(e.key);
  if (read(e.id).element) {
    throw QueueError(QueueErrc::duplicate_id, "id " + std::to_string(e.id) + " already queued");
  }
  if (count_ >= capacity()) {
    throw QueueError(QueueErrc::full, "queue full");
  }

  Element traveler = e;
  for (int level = 0; level < levels(); ++level) {
    auto& slot = nodes_[level][layout_.node_of(traveler.id, level)];
    if (!slot) {
      slot = traveler;
      ++count_;
      return;
    }
    // Smaller key stays, the other is demoted and picks the next branch.
    if (traveler.key < slot->key) std::swap(traveler, *slot);
  }
  throw QueueError(QueueErrc::overflow,
                   "no free node left on the path of id " + std::to_string(traveler.id));
}

Element StructuredHeap::remove(ElementId id) {
  check_id(id);
  NodePos vacancy{};
  bool found = false;
  for (int level = 0; level < levels(); ++level) {
    const std::size_t index = layout_.node_of(id, level);
    const auto& slot = nodes_[level][index];
    if (slot && slot->id == id) {
      vacancy = {level, index};
      found = true;
      break;
    }
  }
  if (!found) {
    throw QueueError(QueueErrc::not_found, "id " + std::to_string(id) + " not queued");
  }

  const Element removed = *nodes_[vacancy.level][vacancy.index];
  while (true) {
    std::optional<NodePos> best;
    if (vacancy.level + 1 < levels()) {
      const int below = vacancy.level + 1;
      for (std::size_t child : layout_.children(vacancy.level, vacancy.index)) {
        const auto& c = nodes_[below][child];
        // A memopt leaf may hang below a parent that is not on its path.
        if (!c || layout_.node_of(c->id, vacancy.level) != vacancy.index) continue;
        if (!best || c->key < nodes_[best->level][best->index]->key) {
          best = NodePos{below, child};
        }
      }
    }
    if (!best) {
      nodes_[vacancy.level][vacancy.index].reset();
      break;
    }
    nodes_[vacancy.level][vacancy.index] = nodes_[best->level][best->index];
    vacancy = *best;
  }
  --count_;
  return removed;
}

ReadResult StructuredHeap::read(ElementId id) const {
  check_id(id);
  ReadResult out;
  for (int level = 0; level < levels(); ++level) {
    ++out.nodes_inspected;
    const auto& slot = nodes_[level][layout_.node_of(id, level)];
    if (slot && slot->id == id) {
      out.element = slot;
      break;
    }
  }
  return out;
}

void StructuredHeap::delete_insert(ElementId id, Key new_key) {
  validate_key(new_key);
  remove(id);
  insert({id, new_key});
}

std::optional<std::string> StructuredHeap::check_invariants() const {
  std::unordered_set<ElementId> seen;
  std::size_t occupied = 0;
  for (int level = 0; level < levels(); ++level) {
    for (std::size_t index = 0; index < nodes_[level].size(); ++index) {
      const auto& slot = nodes_[level][index];
      if (!slot) continue;
      ++occupied;
      std::ostringstream where;
      where << "node (" << level << "," << index << ") holding (" << slot->id << ":" << slot->key
            << ")";
      if (slot->id >= capacity()) return where.str() + ": id out of range";
      if (!seen.insert(slot->id).second) return where.str() + ": duplicate id";
      if (layout_.node_of(slot->id, level) != index) return where.str() + ": off its path";
      if (level == 0) continue;
      const auto& parent = nodes_[level - 1][layout_.node_of(slot->id, level - 1)];
      if (!parent) return where.str() + ": parent is empty";
      if (parent->key > slot->key) return where.str() + ": parent key is larger";
    }
  }
  if (occupied != count_) {
    return "count " + std::to_string(count_) + " but " + std::to_string(occupied) +
           " occupied nodes";
  }
  return std::nullopt;
}

std::string StructuredHeap::dump() const {
  std::ostringstream out;
  for (int level = 0; level < levels(); ++level) {
    const bool shared_leaf = layout_.kind() == LayoutKind::memopt && level == levels() - 1;
    for (std::size_t index = 0; index < nodes_[level].size(); ++index) {
      if (index > 0) out << ' ';
      const auto& slot = nodes_[level][index];
      if (slot) {
        out << '(' << slot->id << ':' << slot->key << ')';
      } else {
        out << "--";
      }
      if (shared_leaf) {
        const auto p = layout_.parents(level, index);
        out << '{' << p.index[0] << ',' << p.index[1] << '}';
      }
    }
    out << '\n';
  }
  return out.str();
}

StructuredHeap make_naive_queue(int levels, unsigned key_bits) {
  return StructuredHeap(TreeLayout::naive(levels), key_bits);
}

StructuredHeap make_memopt_queue(int levels, unsigned key_bits) {
  return StructuredHeap(TreeLayout::memopt(levels), key_bits);
}

}  // namespace shq
