#pragma once

#include <cstdint>

namespace cxr {

/// Hexcone HSV: hue in degrees [0, 360), saturation and value in [0, 1].
/// Hue is 0 whenever saturation is 0.
struct HsvPixel {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);
Rgb8 hsv_to_rgb(const HsvPixel& p);

}  // namespace cxr
