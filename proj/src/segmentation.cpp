#include "shq/app/segmentation.hpp"

#include <chrono>
#include <fstream>
#include <ostream>

#include "shq/oracle_queue.hpp"
#include "shq/pipelined_queue.hpp"
#include "shq/structured_heap.hpp"

namespace shq::app {
namespace {

template <typename Queue>
void run_engine(const io::GrayImage& image, const RunConfig& config,
                const snn::ModelTables& tables, Queue queue, SegmentationResult& result) {
  snn::Engine<Queue> engine(snn::GridTopology(image.width, image.height), image.pixels, tables,
                            std::move(queue));
  engine.init_state(config.seed);
  result.stats = engine.run_until(tables.seconds_to_ticks(config.duration_seconds));
  result.end_tick = engine.clock().now;
  result.segments = snn::extract_segments(engine, config.eps_ticks);
  if constexpr (std::is_same_v<Queue, PipelinedQueue>) {
    result.queue_cycles = engine.queue().update_cycles();
  }
}

StructuredHeap make_tree(QueueVariant variant, int levels) {
  return variant == QueueVariant::memopt ? make_memopt_queue(levels) : make_naive_queue(levels);
}

}  // namespace

const std::array<Rgb, kPaletteSize>& palette() {
  static const std::array<Rgb, kPaletteSize> colors{{
      {230, 25, 75},   {60, 180, 75},   {255, 225, 25},  {0, 130, 200},
      {245, 130, 48},  {145, 30, 180},  {70, 240, 240},  {240, 50, 230},
      {210, 245, 60},  {250, 190, 212}, {0, 128, 128},   {220, 190, 255},
      {170, 110, 40},  {255, 250, 200}, {128, 0, 0},     {170, 255, 195},
      {128, 128, 0},   {255, 215, 180}, {0, 0, 128},     {128, 128, 128},
      {255, 255, 255}, {0, 0, 0},       {255, 99, 71},   {46, 139, 87},
      {65, 105, 225},  {218, 165, 32},  {199, 21, 133},  {0, 191, 255},
      {154, 205, 50},  {139, 69, 19},   {112, 128, 144}, {255, 20, 147},
  }};
  return colors;
}

SegmentationResult segment_image(const io::GrayImage& image, const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto tables = snn::ModelTables::build(config.params);
  const std::size_t neurons = image.pixels.size();

  SegmentationResult result;
  result.width = image.width;
  result.height = image.height;
  result.synapses = snn::GridTopology(image.width, image.height).synapse_count();

  if (config.queue == QueueVariant::oracle) {
    run_engine(image, config, tables, OracleQueue{}, result);
  } else {
    const int min_levels = config.queue == QueueVariant::memopt ? 3 : 1;
    result.queue_levels = snn::levels_for(neurons, min_levels);
    StructuredHeap tree = make_tree(config.queue, result.queue_levels);
    if (config.pipeline_accounting) {
      run_engine(image, config, tables, PipelinedQueue(std::move(tree)), result);
    } else {
      run_engine(image, config, tables, std::move(tree), result);
    }
  }

  if (config.wall_time) {
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

io::RgbImage render_labels(const snn::SegmentMap& segments, std::uint32_t width,
                           std::uint32_t height) {
  io::RgbImage out;
  out.width = width;
  out.height = height;
  out.rgb.reserve(segments.labels.size() * 3);
  for (const std::uint32_t label : segments.labels) {
    const Rgb& c = palette()[label % kPaletteSize];
    out.rgb.insert(out.rgb.end(), c.begin(), c.end());
  }
  return out;
}

void write_labels_csv(std::ostream& out, const snn::SegmentMap& segments, std::uint32_t width) {
  for (std::size_t i = 0; i < segments.labels.size(); ++i) {
    out << segments.labels[i] << ((i + 1) % width == 0 ? '\n' : ',');
  }
}

nlohmann::json stats_to_json(const SegmentationResult& result, const RunConfig& config) {
  nlohmann::json j;
  j["width"] = result.width;
  j["height"] = result.height;
  j["seed"] = config.seed;
  j["queue"] = std::string(to_string(config.queue));
  j["queue_levels"] = result.queue_levels;
  j["duration_seconds"] = config.duration_seconds;
  j["end_tick"] = result.end_tick;
  j["eps_ticks"] = config.eps_ticks;
  j["synapses"] = result.synapses;
  j["events"] = result.stats.events;
  j["neuron_updates"] = result.stats.neuron_updates;
  j["threshold_clamps"] = result.stats.threshold_clamps;
  j["range_clamps"] = result.stats.range_clamps;
  j["segments"] = result.segments.count;
  j["max_phase_spread"] = result.segments.max_spread;
  if (result.queue_cycles) {
    j["queue_cycles"] = *result.queue_cycles;
    j["queue_cycles_per_update"] =
        result.stats.neuron_updates == 0
            ? 0.0
            : static_cast<double>(*result.queue_cycles) / result.stats.neuron_updates;
  }
  if (result.wall_seconds) j["wall_seconds"] = *result.wall_seconds;
  return j;
}

int run_segmentation(const RunConfig& config, std::ostream& err) {
  try {
    config.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const io::GrayImage image = io::load_pgm(config.image);
    const SegmentationResult result = segment_image(image, config);
    if (!config.out.empty()) {
      io::save_ppm(config.out, render_labels(result.segments, result.width, result.height));
    }
    if (!config.stats.empty()) {
      std::ofstream out(config.stats);
      out << stats_to_json(result, config).dump(2) << '\n';
      if (!out) throw std::runtime_error("cannot write " + config.stats.string());
    }
    if (!config.labels_csv.empty()) {
      std::ofstream out(config.labels_csv);
      write_labels_csv(out, result.segments, result.width);
      if (!out) throw std::runtime_error("cannot write " + config.labels_csv.string());
    }
  } catch (const io::ImageError& e) {
    err << "image error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace shq::app
