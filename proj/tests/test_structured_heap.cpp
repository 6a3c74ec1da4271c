#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "shq/oracle_queue.hpp"
#include "shq/structured_heap.hpp"

using shq::Element;
using shq::NodePos;
using shq::QueueErrc;
using shq::QueueError;
using shq::StructuredHeap;

namespace {

void place(StructuredHeap& q, int level, std::size_t index, Element e) {
  q.set_node({level, index}, e);
}

std::optional<Element> at(const StructuredHeap& q, int level, std::size_t index) {
  return q.node({level, index});
}

std::vector<Element> drain(StructuredHeap& q) {
  std::vector<Element> out;
  while (auto top = q.top()) out.push_back(q.remove(top->id));
  return out;
}

// (0,5), (1,3), (2,7) inserted in that order into a 3-level queue.
StructuredHeap three() {
  auto q = shq::make_naive_queue(3);
  q.insert({0, 5});
  q.insert({1, 3});
  q.insert({2, 7});
  return q;
}

}  // namespace

TEST(StructuredHeap, EmptyQueue) {
  auto q = shq::make_naive_queue(3);
  EXPECT_EQ(q.capacity(), 4u);
  EXPECT_TRUE(q.empty());
  EXPECT_FALSE(q.top());
  EXPECT_FALSE(q.read(1).element);
}

TEST(StructuredHeap, FirstInsertLandsInRoot) {
  auto q = shq::make_naive_queue(4);
  q.insert({6, 42});
  EXPECT_EQ(at(q, 0, 0), (Element{6, 42}));
  EXPECT_EQ(q.size(), 1u);
}

TEST(StructuredHeap, InsertDescentByHand) {
  const auto q = three();
  EXPECT_EQ(at(q, 0, 0), (Element{1, 3}));
  EXPECT_EQ(at(q, 1, 0), (Element{0, 5}));
  EXPECT_EQ(at(q, 1, 1), (Element{2, 7}));
  EXPECT_FALSE(q.check_invariants());

  shq::OracleQueue oracle;
  for (Element e : {Element{0, 5}, Element{1, 3}, Element{2, 7}}) oracle.insert(e);
  EXPECT_EQ(q.top(), oracle.top());
}

TEST(StructuredHeap, DeleteRefillsRootFromSmallerChild) {
  auto q = three();
  EXPECT_EQ(q.remove(1), (Element{1, 3}));
  EXPECT_EQ(q.top(), (Element{0, 5}));
  EXPECT_FALSE(q.check_invariants());
}

TEST(StructuredHeap, ReadFindsOnPath) {
  const auto q = three();
  const auto r = q.read(2);
  EXPECT_EQ(r.element, (Element{2, 7}));
  EXPECT_EQ(r.nodes_inspected, 2);
  const auto miss = q.read(3);
  EXPECT_FALSE(miss.element);
  EXPECT_LE(miss.nodes_inspected, q.levels());
}

TEST(StructuredHeap, TopAfterInsertsAndDelete) {
  auto q = shq::make_naive_queue(3);
  q.insert({0, 5});
  q.insert({1, 3});
  q.insert({2, 7});
  EXPECT_EQ(q.top()->key, 3u);
  q.remove(q.top()->id);
  EXPECT_EQ(q.top()->key, 5u);
}

TEST(StructuredHeap, DeleteInsert) {
  auto q = three();
  q.delete_insert(1, 9);
  EXPECT_EQ(q.top(), (Element{0, 5}));
  EXPECT_EQ(q.read(1).element, (Element{1, 9}));
  EXPECT_FALSE(q.check_invariants());

  auto single = shq::make_naive_queue(2);
  single.insert({1, 4});
  const auto before = single;
  single.delete_insert(1, 4);
  EXPECT_EQ(single, before);
}

TEST(StructuredHeap, DeleteOnlyElement) {
  auto q = shq::make_naive_queue(3);
  q.insert({3, 1});
  q.remove(3);
  EXPECT_TRUE(q.empty());
  EXPECT_FALSE(at(q, 0, 0));
}

TEST(StructuredHeap, Errors) {
  auto q = three();
  try {
    q.insert({1, 8});
    FAIL();
  } catch (const QueueError& e) {
    EXPECT_EQ(e.code(), QueueErrc::duplicate_id);
  }
  try {
    q.remove(3);
    FAIL();
  } catch (const QueueError& e) {
    EXPECT_EQ(e.code(), QueueErrc::not_found);
  }
  EXPECT_THROW(q.delete_insert(3, 1), QueueError);
  EXPECT_THROW(q.insert({4, 1}), QueueError);  // id outside capacity

  auto narrow = StructuredHeap(shq::TreeLayout::naive(3), 13);
  EXPECT_NO_THROW(narrow.insert({0, 8191}));
  try {
    narrow.insert({1, 8192});
    FAIL();
  } catch (const QueueError& e) {
    EXPECT_EQ(e.code(), QueueErrc::invalid_argument);
  }
}

TEST(StructuredHeap, TiesKeepIncumbentAndPromoteLeft) {
  auto q = shq::make_naive_queue(3);
  q.insert({0, 5});
  q.insert({3, 5});
  EXPECT_EQ(at(q, 0, 0)->id, 0u);  // incumbent stays
  q.insert({1, 5});
  q.remove(0);
  EXPECT_EQ(at(q, 0, 0)->id, 1u);  // left child (ids 0,1) wins the tie
}

// Delete of #3 from the root: #5 beats #2, then #6 beats #4.
TEST(StructuredHeap, DeleteFigure) {
  auto q = shq::make_naive_queue(4);
  place(q, 0, 0, {3, 1});
  place(q, 1, 0, {2, 5});
  place(q, 1, 1, {5, 3});
  place(q, 2, 0, {1, 8});
  place(q, 3, 0, {0, 9});
  place(q, 2, 2, {4, 6});
  place(q, 2, 3, {6, 4});
  ASSERT_FALSE(q.check_invariants()) << q.dump();

  EXPECT_EQ(q.remove(3), (Element{3, 1}));
  EXPECT_EQ(at(q, 0, 0), (Element{5, 3}));
  EXPECT_EQ(at(q, 1, 1), (Element{6, 4}));
  EXPECT_EQ(at(q, 2, 2), (Element{4, 6}));
  EXPECT_FALSE(at(q, 2, 3));
  EXPECT_FALSE(q.check_invariants());
}

// Insert of #7 with key 4: demoted past #3 and #5, then displaces #6.
TEST(StructuredHeap, InsertFigure) {
  auto q = shq::make_naive_queue(4);
  place(q, 0, 0, {3, 1});
  place(q, 1, 0, {2, 3});
  place(q, 1, 1, {5, 2});
  place(q, 2, 2, {4, 7});
  place(q, 2, 3, {6, 6});
  ASSERT_FALSE(q.check_invariants()) << q.dump();

  q.insert({7, 4});
  EXPECT_EQ(at(q, 0, 0), (Element{3, 1}));
  EXPECT_EQ(at(q, 1, 1), (Element{5, 2}));
  EXPECT_EQ(at(q, 2, 3), (Element{7, 4}));
  EXPECT_EQ(at(q, 3, 6), (Element{6, 6}));
  EXPECT_FALSE(q.check_invariants());
}

// Delete-insert of #3 on a 4-level memory-optimized queue: #5 and #6 move up,
// the reinserted #3 passes #5 and #1 and displaces #2 into the shared leaf.
TEST(StructuredHeap, DeleteInsertFigureMemopt) {
  auto q = shq::make_memopt_queue(4);
  place(q, 0, 0, {3, 1});
  place(q, 1, 0, {1, 4});
  place(q, 1, 1, {5, 2});
  place(q, 2, 1, {2, 8});
  place(q, 2, 2, {4, 6});
  place(q, 2, 3, {6, 5});
  ASSERT_FALSE(q.check_invariants()) << q.dump();

  q.delete_insert(3, 7);
  EXPECT_EQ(at(q, 0, 0), (Element{5, 2}));
  EXPECT_EQ(at(q, 1, 0), (Element{1, 4}));
  EXPECT_EQ(at(q, 1, 1), (Element{6, 5}));
  EXPECT_EQ(at(q, 2, 1), (Element{3, 7}));
  EXPECT_EQ(at(q, 2, 2), (Element{4, 6}));
  EXPECT_FALSE(at(q, 2, 3));
  EXPECT_EQ(at(q, 3, 0), (Element{2, 8}));
  EXPECT_FALSE(at(q, 3, 1));
  EXPECT_FALSE(q.check_invariants());
}

TEST(StructuredHeap, DumpFormat) {
  const auto q = three();
  EXPECT_EQ(q.dump(), "(1:3)\n(0:5) (2:7)\n-- -- -- --\n");
  auto m = shq::make_memopt_queue(3);
  m.insert({0, 1});
  EXPECT_EQ(m.dump(), "(0:1)\n-- --\n--{0,1}\n");
}

TEST(StructuredHeap, InvariantCheckerCatchesViolations) {
  auto q = shq::make_naive_queue(3);
  place(q, 1, 0, {0, 1});
  EXPECT_TRUE(q.check_invariants());  // empty parent
  place(q, 0, 0, {1, 2});
  EXPECT_TRUE(q.check_invariants());  // parent key above child
  place(q, 0, 0, {3, 0});
  EXPECT_FALSE(q.check_invariants());
  place(q, 1, 1, {1, 4});
  EXPECT_TRUE(q.check_invariants());  // id 1 off its path
}

TEST(StructuredHeap, MemoptFillAllIds) {
  std::mt19937_64 rng(7);
  auto q = shq::make_memopt_queue(4);
  std::vector<shq::ElementId> ids(8);
  std::iota(ids.begin(), ids.end(), 0);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<Element> inserted;
  for (auto id : ids) {
    inserted.push_back({id, rng() % 100});
    q.insert(inserted.back());
  }
  EXPECT_EQ(q.size(), 8u);
  int leaves = 0;
  for (std::size_t i = 0; i < q.layout().slots(3); ++i) leaves += at(q, 3, i).has_value();
  EXPECT_LE(leaves, 2);
  EXPECT_FALSE(q.check_invariants());

  const auto drained = drain(q);
  EXPECT_TRUE(std::is_sorted(drained.begin(), drained.end(),
                             [](const Element& a, const Element& b) { return a.key < b.key; }));
  auto sorted_in = inserted;
  auto sorted_out = drained;
  auto by_id = [](const Element& a, const Element& b) { return a.id < b.id; };
  std::sort(sorted_in.begin(), sorted_in.end(), by_id);
  std::sort(sorted_out.begin(), sorted_out.end(), by_id);
  EXPECT_EQ(sorted_in, sorted_out);
}

TEST(StructuredHeap, NaiveAndMemoptDrainAlike) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    auto naive = shq::make_naive_queue(6);
    auto memopt = shq::make_memopt_queue(6);
    std::vector<shq::ElementId> ids(32);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (auto id : ids) {
      const Element e{id, rng() % 16};
      naive.insert(e);
      memopt.insert(e);
    }
    const auto a = drain(naive);
    const auto b = drain(memopt);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].key, b[i].key);
  }
}

TEST(StructuredHeap, CapacityNeverOverflows) {
  std::mt19937_64 rng(3);
  for (int levels = 1; levels <= 10; ++levels) {
    auto q = shq::make_naive_queue(levels);
    std::vector<shq::ElementId> ids(q.capacity());
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (auto id : ids) ASSERT_NO_THROW(q.insert({id, rng() % 1000}));
    EXPECT_FALSE(q.check_invariants());
    EXPECT_THROW(q.insert({0, 1}), QueueError);
  }
}
