#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "shq/io/netpbm.hpp"

using shq::io::ImageErrc;
using shq::io::ImageError;

namespace {

ImageErrc error_of(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    shq::io::read_pgm(in);
  } catch (const ImageError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << bytes.substr(0, 16);
  return ImageErrc::write_failed;
}

std::string p5(const std::string& header, const std::string& payload) {
  return header + payload;
}

}  // namespace

TEST(Pgm, DecodeTwoByTwo) {
  std::istringstream in(p5("P5\n2 2\n255\n", std::string("\x00\xff\x80\x40", 4)));
  const auto img = shq::io::read_pgm(in);
  EXPECT_EQ(img.width, 2u);
  EXPECT_EQ(img.height, 2u);
  EXPECT_EQ(img.at(0, 0), 0);
  EXPECT_EQ(img.at(1, 0), 255);
  EXPECT_EQ(img.at(0, 1), 128);
  EXPECT_EQ(img.at(1, 1), 64);
}

TEST(Pgm, SkipsComments) {
  std::istringstream in(p5("P5\n# made by hand\n2 # width\n1\n# depth next\n255\n", "ab"));
  const auto img = shq::io::read_pgm(in);
  EXPECT_EQ(img.width, 2u);
  EXPECT_EQ(img.pixels, (std::vector<std::uint8_t>{'a', 'b'}));
}

TEST(Pgm, Errors) {
  EXPECT_EQ(error_of("P2\n2 2\n255\n0 0 0 0\n"), ImageErrc::unsupported_format);
  EXPECT_EQ(error_of("P6\n1 1\n255\nabc"), ImageErrc::unsupported_format);
  EXPECT_EQ(error_of("P5\n2 2\n65535\n"), ImageErrc::unsupported_depth);
  EXPECT_EQ(error_of("P5\n2 x\n255\n"), ImageErrc::bad_header);
  EXPECT_EQ(error_of("P5\n0 2\n255\n"), ImageErrc::bad_dimensions);
  EXPECT_EQ(error_of("P5\n2 2\n255\nabc"), ImageErrc::truncated);
  EXPECT_EQ(error_of(""), ImageErrc::unsupported_format);
}

TEST(Pgm, MissingFile) {
  try {
    shq::io::load_pgm("/nonexistent/image.pgm");
    FAIL();
  } catch (const ImageError& e) {
    EXPECT_EQ(e.code(), ImageErrc::file_not_found);
  }
}

TEST(Pgm, RoundTripThroughFile) {
  shq::io::GrayImage img{3, 2, {1, 2, 3, 4, 5, 6}};
  const auto path = std::filesystem::temp_directory_path() / "shq_netpbm_roundtrip.pgm";
  shq::io::save_pgm(path, img);
  const auto back = shq::io::load_pgm(path);
  EXPECT_EQ(back.width, 3u);
  EXPECT_EQ(back.pixels, img.pixels);
  std::filesystem::remove(path);
}

TEST(Ppm, WritesP6) {
  shq::io::RgbImage img{2, 1, {1, 2, 3, 4, 5, 6}};
  std::ostringstream out;
  shq::io::write_ppm(out, img);
  EXPECT_EQ(out.str(), std::string("P6\n2 1\n255\n\x01\x02\x03\x04\x05\x06"));
}

TEST(Ppm, WriteFailure) {
  try {
    shq::io::save_ppm("/nonexistent/dir/out.ppm", {1, 1, {0, 0, 0}});
    FAIL();
  } catch (const ImageError& e) {
    EXPECT_EQ(e.code(), ImageErrc::write_failed);
  }
}
