#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace shq::snn {

using Tick = std::uint64_t;

/// Potential code of the firing threshold; potentials are quantized on a
/// 13-bit axis with this much headroom below 8192.
inline constexpr std::uint32_t kThresholdCode = 4096;
/// Ticks in one full recharge period with the default time base.
inline constexpr std::uint32_t kPeriodTicks = 4096;
/// Entries in the membrane and inverse-membrane tables (13-bit addresses).
inline constexpr std::uint32_t kLutEntries = 8192;
/// Entries in the weight table, addressed by |pixel difference|.
inline constexpr std::uint32_t kWeightEntries = 256;
/// Weight codes are 9 bits wide.
inline constexpr std::uint32_t kWeightCodeMax = 511;

enum class WeightForm {
  /// w_max * (1 - sigmoid(alpha * (|df| - delta))): strong coupling below delta.
  thresholded,
  /// The sigmoid with (|df| + delta), as printed in the original model.
  literal,
};

/// Leaky integrate-and-fire oscillator and pixel-similarity weight parameters.
struct NeuronParams {
  double input_current = 6.918;  // I0
  double tau = 0.1447;           // membrane time constant, seconds
  double threshold = 1.0;        // p_theta
  double w_max = 0.0325;
  double alpha = 100.0;
  double delta = 6.0;
  WeightForm weight_form = WeightForm::thresholded;

  /// Throws std::invalid_argument unless the neuron fires periodically.
  void validate() const;

  /// Potential after charging for `t` seconds from zero.
  double potential_at(double t) const;
  /// Time to charge from zero to potential `p`.
  double time_to_reach(double p) const;
  /// Full recharge period, time_to_reach(threshold).
  double period_seconds() const;
  double weight(double feature_diff) const;
};

/// Quantized look-up tables for the membrane model, its inverse and the weight
/// calculator.
///
/// membrane[dt]: potential code of a neuron that fires in dt ticks.
/// inverse[p]:   ticks left until firing for potential code p.
/// weight[d]:    weight code for |pixel difference| d.
struct ModelTables {
  NeuronParams params;
  double period_seconds = 0.0;
  double tick_seconds = 0.0;
  std::uint32_t period_ticks = kPeriodTicks;
  std::vector<std::uint16_t> membrane;
  std::vector<std::uint16_t> inverse;
  std::vector<std::uint16_t> weight;

  /// Default time base: one period spans kPeriodTicks ticks.
  static ModelTables build(const NeuronParams& params,
                           std::optional<double> tick_seconds = std::nullopt);

  /// Potential code to model units and back.
  double code_to_potential(double code) const {
    return code * params.threshold / kThresholdCode;
  }
  double potential_to_code(double p) const { return p * kThresholdCode / params.threshold; }

  Tick seconds_to_ticks(double seconds) const;
};

}  // namespace shq::snn
