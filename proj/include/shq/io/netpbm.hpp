#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace shq::io {

enum class ImageErrc {
  file_not_found,
  unsupported_format,
  bad_header,
  unsupported_depth,
  bad_dimensions,
  truncated,
  write_failed,
};

class ImageError : public std::runtime_error {
 public:
  ImageError(ImageErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ImageErrc code() const noexcept { return code_; }

 private:
  ImageErrc code_;
};

/// 8-bit grayscale raster, row-major.
struct GrayImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::uint32_t x, std::uint32_t y) const { return pixels[y * width + x]; }
};

struct RgbImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel
};

/// Binary PGM ("P5") with maxval 255; header comments are skipped.
GrayImage read_pgm(std::istream& in);
GrayImage load_pgm(const std::filesystem::path& path);

void write_pgm(std::ostream& out, const GrayImage& image);
void save_pgm(const std::filesystem::path& path, const GrayImage& image);
/// Binary PPM ("P6"), maxval 255.
void write_ppm(std::ostream& out, const RgbImage& image);
void save_ppm(const std::filesystem::path& path, const RgbImage& image);

}  // namespace shq::io
