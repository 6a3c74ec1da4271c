#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "shq/snn/model_tables.hpp"

namespace shq::app {

enum class QueueVariant { naive, memopt, oracle };

std::string_view to_string(QueueVariant variant);
QueueVariant parse_queue_variant(std::string_view text);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything one segmentation run needs. Empty output paths are skipped.
struct RunConfig {
  std::filesystem::path image;
  snn::NeuronParams params;
  double duration_seconds = 0.2;
  std::uint64_t seed = 1;
  QueueVariant queue = QueueVariant::naive;
  snn::Tick eps_ticks = 64;
  /// Route the event queue through the cycle-level pipeline model and report
  /// queue cycles.
  bool pipeline_accounting = false;
  /// Adds wall-clock seconds to the stats; off by default so the stats file
  /// stays reproducible.
  bool wall_time = false;
  std::filesystem::path out = "labels.ppm";
  std::filesystem::path stats;
  std::filesystem::path labels_csv;

  /// Throws ConfigError on a negative duration or bad neuron parameters.
  void validate() const;
};

/// Sets one `key = value` entry. Unknown keys and unparsable values throw
/// ConfigError.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` text; '#' starts a comment, blank lines are ignored.
void parse_config(std::istream& in, RunConfig& config);
void load_config(const std::filesystem::path& path, RunConfig& config);

}  // namespace shq::app
