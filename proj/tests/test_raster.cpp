#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "cxr/color.hpp"
#include "cxr/error.hpp"
#include "cxr/image_io.hpp"
#include "test_support.hpp"

using namespace cxr;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header,
                                   std::initializer_list<int> payload = {}) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int v : payload) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

ErrorCode code_of(const std::vector<std::uint8_t>& bytes) {
  try {
    decode_image(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("decode_image did not throw");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("ImageBuffer enforces its shape invariants") {
  CHECK_THROWS_AS(ImageBuffer(0, 4, 1), Error);
  CHECK_THROWS_AS(ImageBuffer(4, 4, 2), Error);
  CHECK_THROWS_AS(ImageBuffer(2, 2, 1, {1, 2, 3}), Error);
  ImageBuffer img(3, 2, 3);
  CHECK(img.size() == 18);
  CHECK(img.pixel_count() == 6);
  img.at(2, 1, 2) = 9;
  CHECK(img.data()[17] == 9);
}

TEST_CASE("channel split and merge are inverse") {
  std::mt19937_64 rng(11);
  const auto img = testing::random_image(rng, 7, 5, 3);
  std::vector<ImageBuffer> planes{extract_channel(img, 0), extract_channel(img, 1),
                                  extract_channel(img, 2)};
  CHECK(merge_channels(planes) == img);
  CHECK(planes[1].at(3, 2) == img.at(3, 2, 1));
}

TEST_CASE("decode P5 graymap") {
  const auto img = decode_image(bytes_of("P5\n2 2\n255\n", {0, 85, 170, 255}));
  CHECK(img.width() == 2);
  CHECK(img.height() == 2);
  CHECK(img.channels() == 1);
  CHECK(std::vector<std::uint8_t>(img.data().begin(), img.data().end()) ==
        std::vector<std::uint8_t>{0, 85, 170, 255});
}

TEST_CASE("decode P6 pixmap") {
  const auto img = decode_image(bytes_of("P6\n1 1\n255\n", {255, 0, 0}));
  CHECK(img.channels() == 3);
  CHECK(img.at(0, 0, 0) == 255);
  CHECK(img.at(0, 0, 1) == 0);
  CHECK(img.at(0, 0, 2) == 0);
}

TEST_CASE("netpbm header comments are skipped") {
  const auto img = decode_image(bytes_of("P5 # made by hand\n1 1\n# max\n255\n", {42}));
  CHECK(img.at(0, 0) == 42);
}

TEST_CASE("decode errors are reported distinctly") {
  SUBCASE("truncated payload") {
    CHECK(code_of(bytes_of("P5\n4 4\n255\n", {1, 2, 3, 4, 5, 6, 7, 8})) ==
          ErrorCode::kTruncatedPayload);
  }
  SUBCASE("16-bit maxval") {
    CHECK(code_of(bytes_of("P5\n1 1\n65535\n", {0, 0})) == ErrorCode::kUnsupportedBitDepth);
  }
  SUBCASE("malformed header") {
    CHECK(code_of(bytes_of("P5\nabc 1\n255\n", {0})) == ErrorCode::kMalformedHeader);
    CHECK(code_of(bytes_of("P5\n0 1\n255\n", {})) == ErrorCode::kMalformedHeader);
    CHECK(code_of(bytes_of("GIF89a")) == ErrorCode::kMalformedHeader);
  }
  SUBCASE("png truncated") {
    std::mt19937_64 rng(3);
    auto png = encode_image(testing::random_image(rng, 16, 16, 1), ImageFormat::kPng);
    png.resize(png.size() / 2);
    CHECK(code_of(png) == ErrorCode::kTruncatedPayload);
  }
}

TEST_CASE("encode P5 is the direct container mapping") {
  const auto bytes = encode_image(ImageBuffer(1, 1, 1, {7}), ImageFormat::kPgm);
  CHECK(bytes == bytes_of("P5\n1 1\n255\n", {7}));
}

TEST_CASE("encode rejects channel/format mismatches") {
  CHECK_THROWS_AS(encode_image(ImageBuffer(2, 2, 3), ImageFormat::kPgm), Error);
  CHECK_THROWS_AS(encode_image(ImageBuffer(2, 2, 1), ImageFormat::kPpm), Error);
}

TEST_CASE("decode(encode(img)) is the identity for every container") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 60; ++trial) {
    const int channels = trial % 2 == 0 ? 1 : 3;
    const auto img = testing::random_image(rng, dim(rng), dim(rng), channels);
    const auto pnm = channels == 1 ? ImageFormat::kPgm : ImageFormat::kPpm;
    CHECK(decode_image(encode_image(img, pnm)) == img);
    CHECK(decode_image(encode_image(img, ImageFormat::kPng)) == img);
  }
}

TEST_CASE("encode(decode(bytes)) reproduces canonical bytes") {
  const auto pgm = bytes_of("P5\n3 1\n255\n", {1, 2, 3});
  CHECK(encode_image(decode_image(pgm), ImageFormat::kPgm) == pgm);
  std::mt19937_64 rng(5);
  const auto png = encode_image(testing::random_image(rng, 9, 4, 3), ImageFormat::kPng);
  CHECK(encode_image(decode_image(png), ImageFormat::kPng) == png);
}

TEST_CASE("read_image/write_image pick the container from the extension") {
  testing::TempDir dir("io");
  std::mt19937_64 rng(8);
  const auto gray = testing::random_image(rng, 5, 6, 1);
  const auto rgb = testing::random_image(rng, 5, 6, 3);
  write_image(dir.path() / "a.pgm", gray);
  write_image(dir.path() / "b.png", rgb);
  write_image(dir.path() / "c.pnm", rgb);
  CHECK(read_image(dir.path() / "a.pgm") == gray);
  CHECK(read_image(dir.path() / "b.png") == rgb);
  CHECK(read_image(dir.path() / "c.pnm") == rgb);
  CHECK_THROWS_AS(write_image(dir.path() / "d.jpg", gray), Error);
}

TEST_CASE("rgb_to_hsv anchors") {
  auto gray = rgb_to_hsv(128, 128, 128);
  CHECK(gray.h == 0.0);
  CHECK(gray.s == 0.0);
  CHECK(gray.v == doctest::Approx(0.502).epsilon(1e-3));

  auto red = rgb_to_hsv(255, 0, 0);
  CHECK(red.h == 0.0);
  CHECK(red.s == 1.0);
  CHECK(red.v == 1.0);

  // Hand evaluation: max = g = b, delta = 255, h = 60 * (2 + (b - r) / delta) = 180.
  auto cyan = rgb_to_hsv(0, 255, 255);
  CHECK(cyan.h == doctest::Approx(180.0));
  CHECK(cyan.s == 1.0);
  CHECK(cyan.v == 1.0);

  auto black = rgb_to_hsv(0, 0, 0);
  CHECK(black.s == 0.0);
  CHECK(black.h == 0.0);
}

TEST_CASE("hsv_to_rgb anchors") {
  const auto g = hsv_to_rgb({0.0, 0.0, 0.5});
  CHECK(std::abs(g.r - 128) <= 1);
  CHECK(g.r == g.g);
  CHECK(g.g == g.b);
  CHECK(hsv_to_rgb({0.0, 1.0, 1.0}) == Rgb8{255, 0, 0});
}

TEST_CASE("hsv conversion ranges hold over the lattice") {
  for (int r = 0; r < 256; r += 17) {
    for (int g = 0; g < 256; g += 17) {
      for (int b = 0; b < 256; b += 17) {
        const auto p = rgb_to_hsv(r, g, b);
        CHECK(p.h >= 0.0);
        CHECK(p.h < 360.0);
        CHECK(p.s >= 0.0);
        CHECK(p.s <= 1.0);
        CHECK(p.v >= 0.0);
        CHECK(p.v <= 1.0);
        if (p.s == 0.0) CHECK(p.h == 0.0);
      }
    }
  }
}

TEST_CASE("rgb -> hsv -> rgb moves no channel by more than one level") {
  // 8x8x8 lattice covering both ends of every channel.
  int worst = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 8; ++k) {
        const int r = i * 255 / 7, g = j * 255 / 7, b = k * 255 / 7;
        const auto back = hsv_to_rgb(rgb_to_hsv(r, g, b));
        worst = std::max({worst, std::abs(back.r - r), std::abs(back.g - g),
                          std::abs(back.b - b)});
      }
    }
  }
  CHECK(worst <= 1);

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> level(0, 255);
  for (int n = 0; n < 20000; ++n) {
    const int r = level(rng), g = level(rng), b = level(rng);
    const auto back = hsv_to_rgb(rgb_to_hsv(r, g, b));
    REQUIRE(std::abs(back.r - r) <= 1);
    REQUIRE(std::abs(back.g - g) <= 1);
    REQUIRE(std::abs(back.b - b) <= 1);
  }
}
