#include "shq/oracle_queue.hpp"

#include <string>

namespace shq {

void OracleQueue::insert(Element e) {
  if (!by_id_.emplace(e.id, e.key).second) {
    throw QueueError(QueueErrc::duplicate_id, "id " + std::to_string(e.id) + " already queued");
  }
  ordered_.emplace(e.key, e.id);
}

Element OracleQueue::remove(ElementId id) {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw QueueError(QueueErrc::not_found, "id " + std::to_string(id) + " not queued");
  }
  const Element out{id, it->second};
  ordered_.erase({it->second, id});
  by_id_.erase(it);
  return out;
}

std::optional<Element> OracleQueue::read(ElementId id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return Element{id, it->second};
}

std::optional<Element> OracleQueue::top() const {
  if (ordered_.empty()) return std::nullopt;
  const auto& [key, id] = *ordered_.begin();
  return Element{id, key};
}

void OracleQueue::delete_insert(ElementId id, Key new_key) {
  remove(id);
  insert({id, new_key});
}

}  // namespace shq
