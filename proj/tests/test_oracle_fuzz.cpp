#include <gtest/gtest.h>

#include "shq/fuzz.hpp"
#include "shq/oracle_queue.hpp"

using shq::Element;
using shq::OracleQueue;

TEST(OracleQueue, TopAndDelete) {
  OracleQueue q;
  q.insert({0, 5});
  q.insert({1, 3});
  q.insert({2, 7});
  EXPECT_EQ(q.top(), (Element{1, 3}));
  EXPECT_EQ(q.remove(1), (Element{1, 3}));
  EXPECT_EQ(q.top(), (Element{0, 5}));
  EXPECT_EQ(q.size(), 2u);
}

TEST(OracleQueue, TiesOrderById) {
  OracleQueue q;
  q.insert({4, 2});
  q.insert({1, 2});
  EXPECT_EQ(q.top()->id, 1u);
}

TEST(OracleQueue, ReadAndUpdate) {
  OracleQueue q;
  q.insert({3, 10});
  EXPECT_EQ(q.read(3), (Element{3, 10}));
  EXPECT_FALSE(q.read(2));
  q.delete_insert(3, 1);
  EXPECT_EQ(q.read(3), (Element{3, 1}));
}

TEST(OracleQueue, Errors) {
  OracleQueue q;
  q.insert({0, 1});
  EXPECT_THROW(q.insert({0, 2}), shq::QueueError);
  EXPECT_THROW(q.remove(5), shq::QueueError);
  EXPECT_THROW(q.delete_insert(5, 1), shq::QueueError);
  EXPECT_FALSE(OracleQueue{}.top());
}

TEST(Fuzz, NaiveSeed1) {
  const auto report = shq::fuzz_compare({.seed = 1, .op_count = 10'000, .levels = 6});
  EXPECT_TRUE(report.ok) << report.to_text();
  EXPECT_EQ(report.ops_applied, 10'000u);
  EXPECT_GT(report.invariant_sweeps, 0u);
}

TEST(Fuzz, MemoptSeed1) {
  const auto report = shq::fuzz_compare(
      {.seed = 1, .op_count = 10'000, .levels = 6, .variant = shq::LayoutKind::memopt});
  EXPECT_TRUE(report.ok) << report.to_text();
}

TEST(Fuzz, ZeroOps) {
  const auto report = shq::fuzz_compare({.seed = 9, .op_count = 0});
  EXPECT_TRUE(report.ok);
  EXPECT_EQ(report.drained, 0u);
}

TEST(Fuzz, DeterministicPerSeed) {
  const shq::FuzzOptions o{.seed = 5, .op_count = 2000, .levels = 8};
  EXPECT_EQ(shq::fuzz_compare(o).to_text(), shq::fuzz_compare(o).to_text());
}

TEST(Fuzz, ManySmallCampaigns) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    for (auto variant : {shq::LayoutKind::naive, shq::LayoutKind::memopt}) {
      const int levels = 3 + static_cast<int>(seed % 6);
      const auto report = shq::fuzz_compare(
          {.seed = seed, .op_count = 1000, .levels = levels, .variant = variant});
      EXPECT_TRUE(report.ok) << report.to_text();
    }
  }
}

TEST(CompareDrains, TieGroupsAsSets) {
  EXPECT_EQ(shq::compare_drains({{1, 2}, {0, 2}, {3, 5}}, {{0, 2}, {1, 2}, {3, 5}}), "");
  EXPECT_NE(shq::compare_drains({{1, 2}, {0, 2}}, {{1, 2}, {2, 2}}), "");
  EXPECT_NE(shq::compare_drains({{1, 2}, {0, 3}}, {{0, 3}, {1, 2}}), "");
  EXPECT_NE(shq::compare_drains({{1, 2}}, {}), "");
}
