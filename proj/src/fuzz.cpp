#include "shq/fuzz.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "shq/oracle_queue.hpp"
#include "shq/structured_heap.hpp"

namespace shq {

namespace {

StructuredHeap make_variant(LayoutKind variant, int levels) {
  return variant == LayoutKind::naive ? make_naive_queue(levels) : make_memopt_queue(levels);
}

template <typename Queue>
std::vector<Element> drain(Queue& q) {
  std::vector<Element> out;
  while (auto t = q.top()) {
    out.push_back(q.remove(t->id));
  }
  return out;
}

}  // namespace

std::string FuzzReport::to_text() const {
  std::ostringstream out;
  out << (ok ? "OK" : "DIVERGENCE") << " ops=" << ops_applied << " sweeps=" << invariant_sweeps
      << " drained=" << drained;
  if (!ok) out << "\n" << divergence;
  return out.str();
}

std::string compare_drains(const std::vector<Element>& expected, const std::vector<Element>& actual) {
  if (expected.size() != actual.size()) {
    return "drain length " + std::to_string(actual.size()) + ", expected " +
           std::to_string(expected.size());
  }
  std::size_t i = 0;
  while (i < expected.size()) {
    std::size_t j = i;
    std::multiset<ElementId> want;
    std::multiset<ElementId> got;
    while (j < expected.size() && expected[j].key == expected[i].key) {
      if (actual[j].key != expected[j].key) {
        return "drain position " + std::to_string(j) + ": key " + std::to_string(actual[j].key) +
               ", expected " + std::to_string(expected[j].key);
      }
      want.insert(expected[j].id);
      got.insert(actual[j].id);
      ++j;
    }
    if (j < actual.size() && actual[j].key == expected[i].key) {
      return "drain position " + std::to_string(j) + ": tie group for key " +
             std::to_string(expected[i].key) + " too long";
    }
    if (want != got) {
      return "tie group for key " + std::to_string(expected[i].key) + " has different ids";
    }
    i = j;
  }
  return {};
}

FuzzReport fuzz_compare(const FuzzOptions& options) {
  FuzzReport report;
  StructuredHeap shq = make_variant(options.variant, options.levels);
  OracleQueue oracle;
  std::mt19937_64 rng(options.seed);

  const auto capacity = static_cast<ElementId>(shq.capacity());
  std::vector<ElementId> present;
  std::vector<ElementId> absent(capacity);
  for (ElementId id = 0; id < capacity; ++id) absent[id] = id;

  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto random_key = [&]() -> Key {
    // Narrow keys force plenty of ties.
    return (rng() % 4 == 0) ? rng() % 8 : rng() % (Key{1} << 20);
  };
  auto fail = [&](const std::string& what) {
    report.ok = false;
    std::ostringstream out;
    out << "op " << report.ops_applied << ": " << what << "\n" << shq.dump();
    report.divergence = out.str();
  };
  auto take = [](std::vector<ElementId>& from, std::size_t i) {
    const ElementId id = from[i];
    from[i] = from.back();
    from.pop_back();
    return id;
  };

  for (std::size_t op = 0; op < options.op_count && report.ok; ++op) {
    const unsigned roll = static_cast<unsigned>(rng() % 100);
    bool mutated = true;
    try {
      if (roll < 40 && !absent.empty()) {
        const Element e{take(absent, pick(absent.size())), random_key()};
        shq.insert(e);
        oracle.insert(e);
        present.push_back(e.id);
      } else if (roll < 58 && !present.empty()) {
        const ElementId id = take(present, pick(present.size()));
        const Element got = shq.remove(id);
        const Element want = oracle.remove(id);
        absent.push_back(id);
        if (got != want) fail("remove returned a different element");
      } else if (roll < 68 && !present.empty()) {
        const auto t = shq.top();
        const Element got = shq.remove(t->id);
        oracle.remove(t->id);
        present.erase(std::find(present.begin(), present.end(), t->id));
        absent.push_back(t->id);
        if (got != *t) fail("remove of top returned a different element");
      } else if (roll < 88 && !present.empty()) {
        const ElementId id = present[pick(present.size())];
        const Key key = random_key();
        shq.delete_insert(id, key);
        oracle.delete_insert(id, key);
      } else if (roll < 98) {
        mutated = false;
        const auto id = static_cast<ElementId>(pick(capacity));
        const ReadResult got = shq.read(id);
        if (got.element != oracle.read(id)) fail("read(" + std::to_string(id) + ") differs");
        if (got.nodes_inspected > shq.levels()) fail("read inspected more than L nodes");
      } else {
        mutated = false;
        // Error paths must leave both queues untouched.
        if (!present.empty()) {
          const ElementId id = present[pick(present.size())];
          bool threw = false;
          try {
            shq.insert({id, random_key()});
          } catch (const QueueError& e) {
            threw = e.code() == QueueErrc::duplicate_id;
          }
          if (!threw) fail("duplicate insert not rejected");
        }
        if (!absent.empty()) {
          const ElementId id = absent[pick(absent.size())];
          bool threw = false;
          try {
            shq.remove(id);
          } catch (const QueueError& e) {
            threw = e.code() == QueueErrc::not_found;
          }
          if (!threw) fail("remove of absent id not rejected");
        }
      }
    } catch (const QueueError& e) {
      fail(std::string("unexpected queue error: ") + e.what());
    }
    ++report.ops_applied;
    if (!report.ok) break;

    const auto t = shq.top();
    const auto ot = oracle.top();
    if (t.has_value() != ot.has_value() || (t && t->key != ot->key)) {
      fail("top key differs from oracle");
    } else if (t && oracle.read(t->id) != t) {
      fail("top element is not queued in the oracle");
    }
    if (shq.size() != oracle.size()) fail("size differs from oracle");

    const bool sweep_now =
        mutated && (options.levels <= options.sweep_every_op_levels ||
                    (options.sweep_period != 0 && report.ops_applied % options.sweep_period == 0));
    if (report.ok && sweep_now) {
      ++report.invariant_sweeps;
      if (auto violation = shq.check_invariants()) fail("invariant: " + *violation);
    }
  }

  if (report.ok) {
    const auto want = drain(oracle);
    const auto got = drain(shq);
    report.drained = got.size();
    if (auto mismatch = compare_drains(want, got); !mismatch.empty()) fail(mismatch);
  }
  return report;
}

}  // namespace shq
