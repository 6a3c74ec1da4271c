#include "shq/app/run_config.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string>

namespace shq::app {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("bad number for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  throw ConfigError("bad flag for " + std::string(key) + ": '" + std::string(value) + "'");
}

}  // namespace

std::string_view to_string(QueueVariant variant) {
  switch (variant) {
    case QueueVariant::naive: return "naive";
    case QueueVariant::memopt: return "memopt";
    case QueueVariant::oracle: return "oracle";
  }
  return "?";
}

QueueVariant parse_queue_variant(std::string_view text) {
  if (text == "naive") return QueueVariant::naive;
  if (text == "memopt") return QueueVariant::memopt;
  if (text == "oracle") return QueueVariant::oracle;
  throw ConfigError("unknown queue variant '" + std::string(text) +
                    "' (expected naive, memopt or oracle)");
}

void RunConfig::validate() const {
  if (!(duration_seconds >= 0.0)) throw ConfigError("duration must not be negative");
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (pipeline_accounting && queue == QueueVariant::oracle) {
    throw ConfigError("pipeline accounting needs a structured heap queue (naive or memopt)");
  }
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  auto& p = config.params;
  if (key == "image") config.image = std::string(value);
  else if (key == "duration_ms") config.duration_seconds = to_double(key, value) / 1000.0;
  else if (key == "duration_s") config.duration_seconds = to_double(key, value);
  else if (key == "seed") config.seed = to_uint(key, value);
  else if (key == "queue") config.queue = parse_queue_variant(value);
  else if (key == "eps_ticks") config.eps_ticks = to_uint(key, value);
  else if (key == "pipeline_accounting") config.pipeline_accounting = to_bool(key, value);
  else if (key == "wall_time") config.wall_time = to_bool(key, value);
  else if (key == "out") config.out = std::string(value);
  else if (key == "stats") config.stats = std::string(value);
  else if (key == "labels_csv") config.labels_csv = std::string(value);
  else if (key == "input_current" || key == "I0") p.input_current = to_double(key, value);
  else if (key == "tau") p.tau = to_double(key, value);
  else if (key == "threshold") p.threshold = to_double(key, value);
  else if (key == "w_max") p.w_max = to_double(key, value);
  else if (key == "alpha") p.alpha = to_double(key, value);
  else if (key == "delta") p.delta = to_double(key, value);
  else if (key == "weight_form") {
    if (value == "thresholded") p.weight_form = snn::WeightForm::thresholded;
    else if (value == "literal") p.weight_form = snn::WeightForm::literal;
    else throw ConfigError("unknown weight_form '" + std::string(value) + "'");
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void parse_config(std::istream& in, RunConfig& config) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    try {
      apply_setting(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void load_config(const std::filesystem::path& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  parse_config(in, config);
}

}  // namespace shq::app
