#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "shq/snn/model_tables.hpp"

using shq::snn::kThresholdCode;
using shq::snn::ModelTables;
using shq::snn::NeuronParams;
using shq::snn::WeightForm;

namespace {

const ModelTables& default_tables() {
  static const ModelTables t = ModelTables::build(NeuronParams{});
  return t;
}

}  // namespace

// Reference values below were computed separately at 30-digit precision.
TEST(ModelTables, Period) {
  const auto& t = default_tables();
  EXPECT_NEAR(t.period_seconds * 1e3, 3.0587116837, 1e-9);
  EXPECT_EQ(t.period_ticks, 4096u);
  EXPECT_NEAR(t.tick_seconds * 1e6, 0.7467557821, 1e-9);
  EXPECT_EQ(t.seconds_to_ticks(0.2), 267825u);
  EXPECT_EQ(t.seconds_to_ticks(0.0), 0u);
}

TEST(ModelTables, MembraneBoundaries) {
  const auto& t = default_tables();
  EXPECT_EQ(t.membrane[0], kThresholdCode);
  EXPECT_EQ(t.membrane[t.period_ticks], 0);
  EXPECT_EQ(t.membrane[8191], 0);
  EXPECT_EQ(t.membrane[1], 4095);
  EXPECT_EQ(t.membrane[2048], 2059);
  EXPECT_EQ(t.membrane[4095], 1);
}

TEST(ModelTables, InverseValues) {
  const auto& t = default_tables();
  EXPECT_EQ(t.inverse[0], 4096);
  EXPECT_EQ(t.inverse[1], 4095);
  EXPECT_EQ(t.inverse[2048], 2059);
  EXPECT_EQ(t.inverse[4095], 1);
  EXPECT_EQ(t.inverse[kThresholdCode], 0);
  EXPECT_EQ(t.inverse[8191], 0);  // at or above threshold: fire now
}

TEST(ModelTables, RoundTrip) {
  const auto& t = default_tables();
  for (std::uint32_t p = 0; p <= kThresholdCode; ++p) {
    EXPECT_LE(std::abs(int(p) - int(t.membrane[t.inverse[p]])), 1) << "p=" << p;
  }
  for (std::uint32_t dt = 0; dt <= t.period_ticks; ++dt) {
    EXPECT_LE(std::abs(int(dt) - int(t.inverse[t.membrane[dt]])), 1) << "dt=" << dt;
  }
}

TEST(ModelTables, Monotone) {
  const auto& t = default_tables();
  for (std::size_t i = 1; i < t.membrane.size(); ++i) EXPECT_LE(t.membrane[i], t.membrane[i - 1]);
  for (std::size_t i = 1; i < t.inverse.size(); ++i) EXPECT_LE(t.inverse[i], t.inverse[i - 1]);
  for (std::size_t i = 1; i < t.weight.size(); ++i) EXPECT_LE(t.weight[i], t.weight[i - 1]);
  // The slope is just under one code per tick near threshold, so single-tick
  // steps may repeat a code; two ticks always gain potential.
  for (std::uint32_t dt = 2; dt <= t.period_ticks; ++dt) {
    EXPECT_GT(t.membrane[dt - 2], t.membrane[dt]) << "dt=" << dt;
  }
}

TEST(ModelTables, HalfPeriodMatchesModel) {
  const auto& t = default_tables();
  const NeuronParams p;
  const double expected = p.potential_at(t.period_seconds / 2) * kThresholdCode / p.threshold;
  EXPECT_EQ(t.membrane[t.period_ticks / 2], static_cast<int>(std::lround(expected)));
}

TEST(ModelTables, Weights) {
  const auto& t = default_tables();
  EXPECT_EQ(t.weight[0], 133);   // 0.0325 * 4096
  EXPECT_EQ(t.weight[6], 67);    // half of w_max at |df| = delta
  EXPECT_EQ(t.weight[255], 0);
  EXPECT_GE(t.weight[5], 132);
  EXPECT_LE(t.weight[7], 1);
}

TEST(ModelTables, LiteralWeightsVanish) {
  NeuronParams p;
  p.weight_form = WeightForm::literal;
  const auto t = ModelTables::build(p);
  for (auto w : t.weight) EXPECT_EQ(w, 0);
}

TEST(ModelTables, RejectsNonPeriodicNeuron) {
  NeuronParams p;
  p.threshold = p.input_current / p.tau;
  EXPECT_THROW(ModelTables::build(p), std::invalid_argument);
  p = NeuronParams{};
  p.tau = 0;
  EXPECT_THROW(ModelTables::build(p), std::invalid_argument);
  p = NeuronParams{};
  p.w_max = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ModelTables, CustomTick) {
  const NeuronParams p;
  const auto t = ModelTables::build(p, p.period_seconds() / 1000);
  EXPECT_EQ(t.period_ticks, 1000u);
  EXPECT_EQ(t.inverse[0], 1000);
  EXPECT_EQ(t.membrane[1000], 0);
  EXPECT_THROW(ModelTables::build(p, p.period_seconds() / 9000), std::invalid_argument);
}
