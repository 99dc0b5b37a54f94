#include "cxr/color.hpp"

#include <algorithm>
#include <cmath>

namespace cxr {
namespace {

std::uint8_t to_byte(double unit) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
}

}  // namespace

HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const int max = std::max({r, g, b});
  const int min = std::min({r, g, b});
  const int delta = max - min;

  HsvPixel p;
  p.v = max / 255.0;
  if (max == 0 || delta == 0) return p;
  p.s = static_cast<double>(delta) / max;

  double h = 0.0;
  if (max == r) {
    h = 60.0 * static_cast<double>(g - b) / delta;
  } else if (max == g) {
    h = 60.0 * (2.0 + static_cast<double>(b - r) / delta);
  } else {
    h = 60.0 * (4.0 + static_cast<double>(r - g) / delta);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  p.h = h;
  return p;
}

Rgb8 hsv_to_rgb(const HsvPixel& p) {
  const double v = std::clamp(p.v, 0.0, 1.0);
  const double s = std::clamp(p.s, 0.0, 1.0);
  if (s == 0.0) {
    const auto gray = to_byte(v);
    return {gray, gray, gray};
  }
  double h = std::fmod(p.h, 360.0);
  if (h < 0.0) h += 360.0;
  const double sector = h / 60.0;
  const int i = static_cast<int>(std::floor(sector)) % 6;
  const double f = sector - std::floor(sector);
  const double lo = v * (1.0 - s);
  const double falling = v * (1.0 - s * f);
  const double rising = v * (1.0 - s * (1.0 - f));

  switch (i) {
    case 0: return {to_byte(v), to_byte(rising), to_byte(lo)};
    case 1: return {to_byte(falling), to_byte(v), to_byte(lo)};
    case 2: return {to_byte(lo), to_byte(v), to_byte(rising)};
    case 3: return {to_byte(lo), to_byte(falling), to_byte(v)};
    case 4: return {to_byte(rising), to_byte(lo), to_byte(v)};
    default: return {to_byte(v), to_byte(lo), to_byte(falling)};
  }
}

}  // namespace cxr
