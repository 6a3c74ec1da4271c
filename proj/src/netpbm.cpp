#include "shq/io/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace shq::io {

namespace {

void skip_space_and_comments(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

unsigned long read_header_number(std::istream& in, const char* field) {
  skip_space_and_comments(in);
  if (!std::isdigit(in.peek())) {
    throw ImageError(ImageErrc::bad_header, std::string("PGM header: expected ") + field);
  }
  unsigned long value = 0;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<unsigned long>(in.get() - '0');
    if (value > 0xffffffffUL) {
      throw ImageError(ImageErrc::bad_header, std::string("PGM header: ") + field + " too large");
    }
  }
  return value;
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (in.gcount() != 2 || magic[0] != 'P') {
    throw ImageError(ImageErrc::unsupported_format, "not a netpbm file");
  }
  if (magic[1] != '5') {
    throw ImageError(ImageErrc::unsupported_format,
                     std::string("unsupported netpbm format P") + magic[1] + ", need binary P5");
  }
  const unsigned long width = read_header_number(in, "width");
  const unsigned long height = read_header_number(in, "height");
  const unsigned long maxval = read_header_number(in, "maxval");
  if (width == 0 || height == 0 || width * height > (1UL << 28)) {
    throw ImageError(ImageErrc::bad_dimensions,
                     "bad PGM dimensions " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (maxval != 255) {
    throw ImageError(ImageErrc::unsupported_depth,
                     "unsupported PGM maxval " + std::to_string(maxval) + ", need 255");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (!std::isspace(in.get())) {
    throw ImageError(ImageErrc::bad_header, "PGM header not terminated by whitespace");
  }

  GrayImage image;
  image.width = static_cast<std::uint32_t>(width);
  image.height = static_cast<std::uint32_t>(height);
  image.pixels.resize(width * height);
  in.read(reinterpret_cast<char*>(image.pixels.data()),
          static_cast<std::streamsize>(image.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != image.pixels.size()) {
    throw ImageError(ImageErrc::truncated, "PGM raster truncated: got " +
                                               std::to_string(in.gcount()) + " of " +
                                               std::to_string(image.pixels.size()) + " bytes");
  }
  return image;
}

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageError(ImageErrc::file_not_found, "file not found: " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_ppm(std::ostream& out, const RgbImage& image) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.rgb.data()),
            static_cast<std::streamsize>(image.rgb.size()));
}

void save_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (out) write_pgm(out, image);
  if (!out) throw ImageError(ImageErrc::write_failed, "cannot write " + path.string());
}

void save_ppm(const std::filesystem::path& path, const RgbImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (out) write_ppm(out, image);
  if (!out) throw ImageError(ImageErrc::write_failed, "cannot write " + path.string());
}

}  // namespace shq::io
