#include "cxr/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cxr/color.hpp"
#include "cxr/error.hpp"

namespace cxr {
namespace {

constexpr int kMinTilePixels = 16;
constexpr int kMaxClipPasses = 100;

LevelMap identity_map() {
  LevelMap map{};
  for (int k = 0; k < kLevels; ++k) map[k] = static_cast<std::uint8_t>(k);
  return map;
}

std::uint8_t clamp_round(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

template <class PlaneOp>
ImageBuffer per_channel(const ImageBuffer& img, PlaneOp&& op) {
  if (img.channels() == 1) return op(img);
  std::vector<ImageBuffer> planes;
  planes.reserve(static_cast<std::size_t>(img.channels()));
  for (int c = 0; c < img.channels(); ++c) planes.push_back(op(extract_channel(img, c)));
  return merge_channels(planes);
}

// Tile edges along one axis: edge[i] = i * extent / tiles.
std::vector<int> tile_edges(int extent, int tiles) {
  std::vector<int> edges(static_cast<std::size_t>(tiles) + 1);
  for (int i = 0; i <= tiles; ++i) {
    edges[static_cast<std::size_t>(i)] = static_cast<int>(
        static_cast<long long>(i) * extent / tiles);
  }
  return edges;
}

// For each coordinate, the two neighbouring tile indices and the blend weight
// towards the second. Coordinates outside the outermost tile centers clamp.
struct AxisBlend {
  int lo;
  int hi;
  double weight;
};

std::vector<AxisBlend> axis_blend(int extent, const std::vector<int>& edges) {
  const int tiles = static_cast<int>(edges.size()) - 1;
  std::vector<double> centers(static_cast<std::size_t>(tiles));
  for (int i = 0; i < tiles; ++i) {
    const auto a = edges[static_cast<std::size_t>(i)];
    const auto b = edges[static_cast<std::size_t>(i) + 1];
    centers[static_cast<std::size_t>(i)] = (a + b - 1) / 2.0;
  }
  std::vector<AxisBlend> blend(static_cast<std::size_t>(extent));
  int t = 0;
  for (int x = 0; x < extent; ++x) {
    if (x <= centers.front()) {
      blend[static_cast<std::size_t>(x)] = {0, 0, 0.0};
    } else if (x >= centers.back()) {
      blend[static_cast<std::size_t>(x)] = {tiles - 1, tiles - 1, 0.0};
    } else {
      while (centers[static_cast<std::size_t>(t) + 1] <= x) ++t;
      const double c0 = centers[static_cast<std::size_t>(t)];
      const double c1 = centers[static_cast<std::size_t>(t) + 1];
      blend[static_cast<std::size_t>(x)] = {t, t + 1, (x - c0) / (c1 - c0)};
    }
  }
  return blend;
}

std::uint64_t absolute_clip_limit(double clip_factor, std::uint64_t tile_pixels) {
  const double raw = std::floor(clip_factor * static_cast<double>(tile_pixels) / kLevels);
  constexpr double kCap = static_cast<double>(std::uint64_t{1} << 62);
  const auto limit = static_cast<std::uint64_t>(std::min(raw, kCap));
  return std::max<std::uint64_t>(1, limit);
}

ImageBuffer clahe_plane(const ImageBuffer& plane, const ClaheParams& p) {
  const int width = plane.width();
  const int height = plane.height();
  const auto xs = tile_edges(width, p.tiles_x);
  const auto ys = tile_edges(height, p.tiles_y);

  std::vector<LevelMap> maps(static_cast<std::size_t>(p.tiles_x) *
                             static_cast<std::size_t>(p.tiles_y));
  const auto src = plane.data();
  for (int ty = 0; ty < p.tiles_y; ++ty) {
    for (int tx = 0; tx < p.tiles_x; ++tx) {
      Histogram hist;
      for (int y = ys[ty]; y < ys[ty + 1]; ++y) {
        const auto row = static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
        for (int x = xs[tx]; x < xs[tx + 1]; ++x) {
          ++hist.counts[src[row + static_cast<std::size_t>(x)]];
        }
      }
      hist.total = static_cast<std::uint64_t>(xs[tx + 1] - xs[tx]) *
                   static_cast<std::uint64_t>(ys[ty + 1] - ys[ty]);
      auto& map = maps[static_cast<std::size_t>(ty) * p.tiles_x + tx];
      if (hist.lowest_occupied() == hist.highest_occupied()) {
        map = identity_map();
      } else {
        map = equalization_map(
            clip_histogram(hist, absolute_clip_limit(p.clip_factor, hist.total)));
      }
    }
  }

  const auto bx = axis_blend(width, xs);
  const auto by = axis_blend(height, ys);
  ImageBuffer out(width, height, 1);
  auto dst = out.data();
  for (int y = 0; y < height; ++y) {
    const auto& vy = by[static_cast<std::size_t>(y)];
    const auto* top = &maps[static_cast<std::size_t>(vy.lo) * p.tiles_x];
    const auto* bottom = &maps[static_cast<std::size_t>(vy.hi) * p.tiles_x];
    const auto row = static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
    for (int x = 0; x < width; ++x) {
      const auto& vx = bx[static_cast<std::size_t>(x)];
      const auto v = src[row + static_cast<std::size_t>(x)];
      const double t0 = top[vx.lo][v];
      const double t1 = top[vx.hi][v];
      const double b0 = bottom[vx.lo][v];
      const double b1 = bottom[vx.hi][v];
      const double upper = t0 + (t1 - t0) * vx.weight;
      const double lower = b0 + (b1 - b0) * vx.weight;
      dst[row + static_cast<std::size_t>(x)] = clamp_round(upper + (lower - upper) * vy.weight);
    }
  }
  return out;
}

void validate_clahe(const ImageBuffer& img, const ClaheParams& p) {
  if (img.empty()) throw Error(ErrorCode::kEmptyInput, "clahe: empty image");
  if (p.tiles_x < 1 || p.tiles_y < 1) {
    throw Error(ErrorCode::kInvalidArgument, "clahe: tile grid must be at least 1x1");
  }
  if (!(p.clip_factor > 0.0) || !std::isfinite(p.clip_factor)) {
    throw Error(ErrorCode::kInvalidArgument, "clahe: clip_factor must be positive");
  }
  // The smallest tile is floor(width / tiles_x) by floor(height / tiles_y).
  const long long min_w = img.width() / p.tiles_x;
  const long long min_h = img.height() / p.tiles_y;
  if (min_w * min_h < kMinTilePixels) {
    throw Error(ErrorCode::kInvalidArgument,
                "clahe: " + std::to_string(p.tiles_x) + "x" + std::to_string(p.tiles_y) +
                    " grid on " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()) + " gives tiles under 16 pixels");
  }
}

}  // namespace

std::string_view technique_id(Technique t) {
  switch (t) {
    case Technique::kOriginal: return "original";
    case Technique::kHe: return "he";
    case Technique::kClahe: return "clahe";
    case Technique::kComplement: return "complement";
    case Technique::kGamma: return "gamma";
    case Technique::kBcet: return "bcet";
  }
  return "original";
}

Technique parse_technique(std::string_view id) {
  for (auto t : kAllTechniques) {
    if (technique_id(t) == id) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown technique '" + std::string(id) + "'");
}

LevelMap equalization_map(const Histogram& hist) {
  const int lowest = hist.lowest_occupied();
  if (lowest < 0 || lowest == hist.highest_occupied()) return identity_map();

  std::uint64_t total = 0;
  for (auto c : hist.counts) total += c;
  const std::uint64_t floor_count = hist.counts[static_cast<std::size_t>(lowest)];
  const std::uint64_t span = total - floor_count;

  LevelMap map{};
  std::uint64_t running = 0;
  for (int k = 0; k < kLevels; ++k) {
    running += hist.counts[static_cast<std::size_t>(k)];
    if (running <= floor_count) {
      map[static_cast<std::size_t>(k)] = 0;
      continue;
    }
    // round(255 * num / span), exact in integers, half rounds up.
    const std::uint64_t num = running - floor_count;
    map[static_cast<std::size_t>(k)] =
        static_cast<std::uint8_t>((2 * 255 * num + span) / (2 * span));
  }
  return map;
}

ImageBuffer apply_level_map(const ImageBuffer& img, const LevelMap& map) {
  ImageBuffer out = img;
  for (auto& v : out.data()) v = map[v];
  return out;
}

ImageBuffer hist_equalize(const ImageBuffer& plane) {
  require_plane(plane, "hist_equalize");
  return apply_level_map(plane, equalization_map(compute_histogram(plane)));
}

Histogram clip_histogram(const Histogram& hist, std::uint64_t limit) {
  Histogram out = hist;
  auto& bins = out.counts;
  const auto clip = [&] {
    std::uint64_t excess = 0;
    for (auto& c : bins) {
      if (c > limit) {
        excess += c - limit;
        c = limit;
      }
    }
    return excess;
  };

  for (int pass = 0; pass < kMaxClipPasses; ++pass) {
    std::uint64_t excess = clip();
    if (excess == 0) break;
    const std::uint64_t add = excess / kLevels;
    std::uint64_t rest = excess % kLevels;
    for (auto& c : bins) c += add;
    if (rest == 0) continue;

    std::vector<std::size_t> open;
    for (std::size_t k = 0; k < bins.size(); ++k) {
      if (bins[k] < limit) open.push_back(k);
    }
    if (open.empty()) continue;
    const std::size_t step = std::max<std::size_t>(1, open.size() / rest);
    for (std::size_t i = 0; rest > 0; i += step, --rest) ++bins[open[i % open.size()]];
  }
  clip();

  out.total = 0;
  for (auto c : bins) out.total += c;
  return out;
}

ImageBuffer clahe(const ImageBuffer& img, const ClaheParams& params) {
  validate_clahe(img, params);
  if (img.channels() == 1) return clahe_plane(img, params);

  const std::size_t n = img.pixel_count();
  std::vector<HsvPixel> hsv(n);
  ImageBuffer value(img.width(), img.height(), 1);
  const auto src = img.data();
  for (std::size_t i = 0; i < n; ++i) {
    hsv[i] = rgb_to_hsv(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
    value.data()[i] = clamp_round(hsv[i].v * 255.0);
  }
  const ImageBuffer equalized = clahe_plane(value, params);

  ImageBuffer out(img.width(), img.height(), 3);
  auto dst = out.data();
  for (std::size_t i = 0; i < n; ++i) {
    HsvPixel p = hsv[i];
    p.v = equalized.data()[i] / 255.0;
    const auto rgb = hsv_to_rgb(p);
    dst[3 * i] = rgb.r;
    dst[3 * i + 1] = rgb.g;
    dst[3 * i + 2] = rgb.b;
  }
  return out;
}

ImageBuffer complement(const ImageBuffer& img) {
  ImageBuffer out = img;
  for (auto& v : out.data()) v = static_cast<std::uint8_t>(255 - v);
  return out;
}

double gamma_curve(double x, double a) {
  if (x <= 0.0) return 0.0;
  if (x >= 255.0) return 255.0;
  constexpr double kMidpoint = 127.5;
  const double phi = std::numbers::pi * x / (2.0 * kMidpoint);
  const double gamma = 1.0 + a * std::cos(phi);
  return 255.0 * std::pow(x / 255.0, 1.0 / gamma);
}

LevelMap gamma_map(const GammaParams& params) {
  if (!(params.a >= 0.0 && params.a < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma weight a must lie in [0, 1), got " + std::to_string(params.a));
  }
  LevelMap map{};
  for (int x = 0; x < kLevels; ++x) {
    map[static_cast<std::size_t>(x)] = clamp_round(gamma_curve(x, params.a));
  }
  return map;
}

ImageBuffer gamma_correct(const ImageBuffer& plane, const GammaParams& params) {
  require_plane(plane, "gamma_correct");
  return apply_level_map(plane, gamma_map(params));
}

BcetCoefficients bcet_fit(const ImageStats& st, const BcetTargets& t) {
  if (!(st.h > st.l)) {
    throw Error(ErrorCode::kDegenerateInput, "bcet: constant image has no contrast to fit");
  }
  if (!(t.L < t.E && t.E < t.H)) {
    throw Error(ErrorCode::kInvalidArgument, "bcet: targets must satisfy L < E < H");
  }
  const double num = st.h * st.h * (t.E - t.L) - st.s * (t.H - t.L) +
                     st.l * st.l * (t.H - t.E);
  const double den = 2.0 * (st.h * (t.E - t.L) - st.e * (t.H - t.L) + st.l * (t.H - t.E));
  const double den_scale =
      2.0 * (std::abs(st.h * (t.E - t.L)) + std::abs(st.e * (t.H - t.L)) +
             std::abs(st.l * (t.H - t.E)));
  constexpr double kRelEps = 1e-12;
  if (std::abs(den) <= kRelEps * std::max(1.0, den_scale)) {
    throw Error(ErrorCode::kSingularFit, "bcet: vertex denominator is zero");
  }
  BcetCoefficients k;
  k.b = num / den;
  const double spread = st.h + st.l - 2.0 * k.b;
  if (std::abs(spread) <= kRelEps * std::max({1.0, std::abs(st.h + st.l), std::abs(2.0 * k.b)})) {
    throw Error(ErrorCode::kSingularFit, "bcet: h + l - 2b is zero");
  }
  k.a = (t.H - t.L) / ((st.h - st.l) * spread);
  k.c = t.L - k.a * (st.l - k.b) * (st.l - k.b);
  return k;
}

FloatImage bcet_evaluate(const ImageBuffer& plane, const BcetCoefficients& coeffs) {
  std::vector<double> values(plane.size());
  auto src = plane.data();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = coeffs(src[i]);
  return FloatImage(plane.width(), plane.height(), plane.channels(), std::move(values));
}

ImageBuffer bcet_apply(const ImageBuffer& plane, const BcetCoefficients& coeffs) {
  LevelMap map{};
  for (int x = 0; x < kLevels; ++x) map[static_cast<std::size_t>(x)] = clamp_round(coeffs(x));
  return apply_level_map(plane, map);
}

ImageBuffer bcet(const ImageBuffer& plane, const BcetTargets& targets) {
  require_plane(plane, "bcet");
  return bcet_apply(plane, bcet_fit(image_stats(plane), targets));
}

ImageBuffer enhance(const ImageBuffer& img, Technique technique, const EnhanceParams& params) {
  if (img.empty()) throw Error(ErrorCode::kEmptyInput, "enhance: empty image");
  switch (technique) {
    case Technique::kOriginal:
      return img;
    case Technique::kHe:
      return per_channel(img, [](const ImageBuffer& p) { return hist_equalize(p); });
    case Technique::kClahe:
      return clahe(img, params.clahe);
    case Technique::kComplement:
      return complement(img);
    case Technique::kGamma: {
      const auto map = gamma_map(params.gamma);
      return apply_level_map(img, map);
    }
    case Technique::kBcet:
      return per_channel(img, [&](const ImageBuffer& p) { return bcet(p, params.bcet); });
  }
  return img;
}

}  // namespace cxr
