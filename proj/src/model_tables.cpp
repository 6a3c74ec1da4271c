#include "shq/snn/model_tables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shq::snn {

namespace {

std::uint16_t quantize(double value, std::uint32_t max_code) {
  const double r = std::round(value);
  if (!(r > 0.0)) return 0;
  return static_cast<std::uint16_t>(std::min<double>(r, max_code));
}

}  // namespace

void NeuronParams::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(w_max >= 0.0)) throw std::invalid_argument("w_max must be non-negative");
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (!(threshold < input_current / tau)) {
    throw std::invalid_argument("threshold " + std::to_string(threshold) +
                                " is not below I0/tau = " + std::to_string(input_current / tau) +
                                "; the neuron would never fire");
  }
}

double NeuronParams::potential_at(double t) const {
  return input_current / tau * (1.0 - std::exp(-t / tau));
}

double NeuronParams::time_to_reach(double p) const {
  return -tau * std::log(1.0 - p * tau / input_current);
}

double NeuronParams::period_seconds() const { return time_to_reach(threshold); }

double NeuronParams::weight(double feature_diff) const {
  const double d = std::abs(feature_diff);
  const double shifted = weight_form == WeightForm::thresholded ? d - delta : d + delta;
  return w_max * (1.0 - 1.0 / (1.0 + std::exp(-alpha * shifted)));
}

Tick ModelTables::seconds_to_ticks(double seconds) const {
  if (!(seconds > 0.0)) return 0;
  return static_cast<Tick>(std::llround(seconds / tick_seconds));
}

ModelTables ModelTables::build(const NeuronParams& params, std::optional<double> tick_seconds) {
  params.validate();
  ModelTables t;
  t.params = params;
  t.period_seconds = params.period_seconds();
  t.tick_seconds = tick_seconds.value_or(t.period_seconds / kPeriodTicks);
  if (!(t.tick_seconds > 0.0)) throw std::invalid_argument("tick length must be positive");
  const double period_ticks = std::round(t.period_seconds / t.tick_seconds);
  if (period_ticks < 1.0 || period_ticks >= kLutEntries) {
    throw std::invalid_argument("period of " + std::to_string(period_ticks) +
                                " ticks does not fit the 13-bit time axis");
  }
  t.period_ticks = static_cast<std::uint32_t>(period_ticks);

  t.membrane.resize(kLutEntries);
  for (std::uint32_t dt = 0; dt < kLutEntries; ++dt) {
    const double since_reset = t.period_seconds - dt * t.tick_seconds;
    const double p = since_reset > 0.0 ? params.potential_at(since_reset) : 0.0;
    t.membrane[dt] = quantize(t.potential_to_code(p), kLutEntries - 1);
  }

  t.inverse.resize(kLutEntries);
  for (std::uint32_t code = 0; code < kLutEntries; ++code) {
    const double p = t.code_to_potential(code);
    double left = 0.0;
    if (p < params.threshold) {
      left = (t.period_seconds - params.time_to_reach(p)) / t.tick_seconds;
    }
    t.inverse[code] = quantize(left, kLutEntries - 1);
  }

  t.weight.resize(kWeightEntries);
  for (std::uint32_t d = 0; d < kWeightEntries; ++d) {
    t.weight[d] = quantize(t.potential_to_code(params.weight(d)), kWeightCodeMax);
  }
  return t;
}

}  // namespace shq::snn
