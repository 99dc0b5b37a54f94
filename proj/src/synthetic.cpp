#include "cxr/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "cxr/image_io.hpp"
#include "cxr/random.hpp"

namespace cxr {
namespace {

struct Ellipse {
  double cx, cy, rx, ry;

  double depth(double x, double y) const {
    const double dx = (x - cx) / rx;
    const double dy = (y - cy) / ry;
    return 1.0 - (dx * dx + dy * dy);
  }
};

std::array<Ellipse, 2> lung_fields(int width, int height) {
  const double w = width;
  const double h = height;
  return {Ellipse{0.31 * w, 0.50 * h, 0.17 * w, 0.32 * h},
          Ellipse{0.69 * w, 0.50 * h, 0.17 * w, 0.32 * h}};
}

}  // namespace

ImageBuffer synthetic_cxr(int width, int height, int channels, std::uint64_t seed,
                          std::string_view id) {
  ImageBuffer img(width, height, channels);
  KeyedRng rng(seed, id);
  const double exposure = 0.8 + 0.4 * rng.unit();
  const double haze = 20.0 * rng.unit();
  const double tint = 6.0 * rng.unit();
  const auto lungs = lung_fields(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double v = 170.0 + 40.0 * std::cos(3.0 * x / std::max(1, width));
      for (const auto& e : lungs) {
        const double d = e.depth(x, y);
        if (d > 0.0) v -= exposure * (90.0 + haze) * std::sqrt(d);
      }
      for (int c = 0; c < channels; ++c) {
        const double noise = 12.0 * (rng.unit() - 0.5);
        const double shifted = v + noise + (c == 0 ? tint : 0.0);
        img.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(shifted), 0L, 255L));
      }
    }
  }
  return img;
}

ImageBuffer synthetic_lung_mask(int width, int height) {
  ImageBuffer mask(width, height, 1);
  const auto lungs = lung_fields(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (const auto& e : lungs) {
        if (e.depth(x, y) > 0.0) mask.at(x, y) = 255;
      }
    }
  }
  return mask;
}

Manifest write_synthetic_dataset(const std::filesystem::path& root,
                                 const std::vector<std::string>& classes, int per_class,
                                 int width, int height, int channels, std::uint64_t seed) {
  Manifest m;
  m.classes = classes;
  for (const auto& label : classes) {
    for (int i = 0; i < per_class; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "img%04d.png", i);
      const std::string rel = label + "/" + name;
      write_image(root / rel, synthetic_cxr(width, height, channels, seed, rel));
      m.rows.push_back({rel, label});
    }
  }
  return m;
}

}  // namespace cxr
