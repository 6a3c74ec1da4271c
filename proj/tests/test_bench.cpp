#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "shq/bench/bench.hpp"
#include "shq/oracle_queue.hpp"

using namespace shq::bench;

TEST(ScanQueue, CycleModel) {
  EXPECT_EQ(scan_find_min_cycles(16, 16), 5u);
  EXPECT_EQ(scan_find_min_cycles(1, 16), 5u);
  EXPECT_EQ(scan_find_min_cycles(17, 16), 6u);
  EXPECT_EQ(scan_find_min_cycles(65536, 16), 4100u);
  EXPECT_EQ(scan_find_min_cycles(256, 16), 20u);
  EXPECT_EQ(scan_find_min_cycles(4096, 16), 260u);
  EXPECT_EQ(scan_find_min_cycles(8, 1), 8u);
  EXPECT_EQ(scan_find_min_cycles(8, 5), 2u + 3u);
  EXPECT_THROW(scan_find_min_cycles(0, 16), std::invalid_argument);
}

TEST(ScanQueue, AgreesWithOracle) {
  std::mt19937_64 rng(12);
  ScanQueue scan(64);
  shq::OracleQueue oracle;
  for (shq::ElementId id = 0; id < 64; ++id) {
    const shq::Element e{id, rng() % 20};
    scan.insert(e);
    oracle.insert(e);
  }
  for (int i = 0; i < 500; ++i) {
    const auto [min, cycles] = scan.find_min();
    EXPECT_EQ(min, *oracle.top());
    EXPECT_EQ(cycles, 4u + 4u);
    const shq::Key next = min.key + rng() % 20;
    scan.delete_insert(min.id, next);
    oracle.delete_insert(min.id, next);
  }
}

TEST(ScanQueue, Errors) {
  ScanQueue q(4);
  EXPECT_THROW(q.find_min(), shq::QueueError);
  q.insert({1, 3});
  EXPECT_THROW(q.insert({1, 4}), shq::QueueError);
  EXPECT_THROW(q.insert({4, 4}), shq::QueueError);
  EXPECT_THROW(q.remove(2), shq::QueueError);
  EXPECT_EQ(q.remove(1), (shq::Element{1, 3}));
  EXPECT_THROW(ScanQueue(4, 0), std::invalid_argument);
}

TEST(Sweep, FlatShqAndLinearScan) {
  BenchOptions o;
  o.structures = {Structure::shq_naive, Structure::shq_memopt, Structure::scan};
  o.sizes = {256, 4096};
  o.workloads = {Workload::insert, Workload::delete_insert, Workload::find_min};
  o.ops = 300;
  const auto report = sweep(o);
  ASSERT_EQ(report.size(), 3u * 2u * 3u);
  for (const auto& r : report) {
    if (r.structure == "scan") {
      const double expected = r.op == "find_min" ? (r.n == 256 ? 20.0 : 260.0) : 1.0;
      EXPECT_EQ(r.cycles_per_op, expected) << r.op << " " << r.n;
      EXPECT_EQ(r.levels, 0);
    } else {
      const double expected = r.op == "insert" ? 3.0 : r.op == "delete_insert" ? 7.0 : 1.0;
      EXPECT_EQ(r.cycles_per_op, expected) << r.structure << " " << r.op << " " << r.n;
      EXPECT_EQ(r.levels, r.n == 256 ? 9 : 13);
    }
  }
  // Same workload, same observable results across structures.
  for (const auto& a : report) {
    for (const auto& b : report) {
      if (a.n == b.n && a.workload == b.workload) EXPECT_EQ(a.checksum, b.checksum);
    }
  }
}

TEST(Sweep, EmptyAndInvalid) {
  BenchOptions o;
  o.sizes = {16};
  EXPECT_TRUE(sweep(o).empty());
  std::ostringstream out;
  write_csv(out, {});
  EXPECT_EQ(out.str(), std::string(kBenchCsvHeader) + "\n");
  o.sizes = {16, 8};
  EXPECT_THROW(sweep(o), std::invalid_argument);
  o.sizes = {0};
  EXPECT_THROW(sweep(o), std::invalid_argument);
}

TEST(Sweep, Deterministic) {
  BenchOptions o;
  o.structures = {Structure::shq_memopt, Structure::scan};
  o.sizes = {100};
  o.workloads = {Workload::delete_insert, Workload::find_min};
  o.seed = 77;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, sweep(o));
  write_csv(b, sweep(o));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Sweep, ParseNames) {
  EXPECT_EQ(parse_structure("shq_memopt"), Structure::shq_memopt);
  EXPECT_EQ(parse_workload("find_min"), Workload::find_min);
  EXPECT_FALSE(parse_structure("heap"));
  EXPECT_FALSE(parse_workload(""));
}
