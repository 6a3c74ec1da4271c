#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "json.hpp"

#include "shq/app/run_config.hpp"
#include "shq/io/netpbm.hpp"
#include "shq/snn/engine.hpp"
#include "shq/snn/segments.hpp"

namespace shq::app {

struct SegmentationResult {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  snn::Tick end_tick = 0;
  snn::RunStats stats;
  snn::SegmentMap segments;
  std::uint64_t synapses = 0;
  int queue_levels = 0;
  /// Cycles the pipelined queue spent on delete-insert updates, when
  /// pipeline accounting is on.
  std::optional<std::uint64_t> queue_cycles;
  std::optional<double> wall_seconds;
};

using Rgb = std::array<std::uint8_t, 3>;
inline constexpr std::size_t kPaletteSize = 32;
const std::array<Rgb, kPaletteSize>& palette();

/// Builds the network for `image`, runs it for the configured duration and
/// clusters the final firing phases.
SegmentationResult segment_image(const io::GrayImage& image, const RunConfig& config);

/// Label k is drawn with palette()[k % kPaletteSize].
io::RgbImage render_labels(const snn::SegmentMap& segments, std::uint32_t width,
                           std::uint32_t height);
void write_labels_csv(std::ostream& out, const snn::SegmentMap& segments, std::uint32_t width);
nlohmann::json stats_to_json(const SegmentationResult& result, const RunConfig& config);

/// Exit codes for the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Loads the image, segments it and writes the configured outputs. Errors are
/// reported on `err`; returns kExitUsage for config errors and kExitRuntime
/// for I/O and runtime failures.
int run_segmentation(const RunConfig& config, std::ostream& err);

}  // namespace shq::app
