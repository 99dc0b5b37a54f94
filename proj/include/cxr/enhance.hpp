#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cxr/histogram.hpp"
#include "cxr/image.hpp"

namespace cxr {

/// Contrast-limited adaptive equalization settings. The absolute per-tile clip
/// limit is max(1, floor(clip_factor * tile_pixels / 256)).
struct ClaheParams {
  int tiles_x = 8;
  int tiles_y = 8;
  double clip_factor = 2.0;
};

/// Weighting factor of the cosine gamma curve, 0 <= a < 1.
struct GammaParams {
  double a = 0.5;
};

/// Desired output minimum, maximum, and mean of the parabolic stretch.
struct BcetTargets {
  double L = 0.0;
  double H = 255.0;
  double E = 110.0;
};

/// Y = a (x - b)^2 + c
struct BcetCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const { return a * (x - b) * (x - b) + c; }
};

enum class Technique { kOriginal, kHe, kClahe, kComplement, kGamma, kBcet };

inline constexpr std::array<Technique, 6> kAllTechniques = {
    Technique::kOriginal, Technique::kHe,    Technique::kClahe,
    Technique::kComplement, Technique::kGamma, Technique::kBcet};

std::string_view technique_id(Technique t);
/// Parses `original`, `he`, `clahe`, `complement`, `gamma`, or `bcet`.
Technique parse_technique(std::string_view id);

struct EnhanceParams {
  ClaheParams clahe;
  GammaParams gamma;
  BcetTargets bcet;
};

using LevelMap = std::array<std::uint8_t, kLevels>;

/// Min-normalized CDF remap shared by global and tiled equalization:
/// T(k) = round(255 (cdf[k] - cdf_min) / (1 - cdf_min)), with cdf_min taken at
/// the lowest occupied bin. A histogram with one occupied bin maps to identity.
LevelMap equalization_map(const Histogram& hist);

ImageBuffer apply_level_map(const ImageBuffer& img, const LevelMap& map);

ImageBuffer hist_equalize(const ImageBuffer& plane);

/// Clips `hist` at `limit` and redistributes the excess until no bin exceeds
/// the limit or 100 passes elapse; whatever excess remains is dropped.
Histogram clip_histogram(const Histogram& hist, std::uint64_t limit);

/// 1-channel input is equalized directly; 3-channel input is equalized on the
/// HSV value channel. Throws kInvalidArgument if any tile has < 16 pixels.
ImageBuffer clahe(const ImageBuffer& img, const ClaheParams& params = {});

ImageBuffer complement(const ImageBuffer& img);

/// Real-valued tone curve g(x) = 255 (x/255)^(1/gamma(x)),
/// gamma(x) = 1 + a cos(pi x / 255).
double gamma_curve(double x, double a);
LevelMap gamma_map(const GammaParams& params);
ImageBuffer gamma_correct(const ImageBuffer& plane, const GammaParams& params = {});

/// Throws kDegenerateInput for constant images and kSingularFit when either
/// denominator of the fit vanishes.
BcetCoefficients bcet_fit(const ImageStats& stats, const BcetTargets& targets);
/// Pre-quantization parabola values, one per sample.
FloatImage bcet_evaluate(const ImageBuffer& plane, const BcetCoefficients& coeffs);
ImageBuffer bcet_apply(const ImageBuffer& plane, const BcetCoefficients& coeffs);
ImageBuffer bcet(const ImageBuffer& plane, const BcetTargets& targets = {});

/// Dispatches one technique over a 1- or 3-channel image. HE, gamma, and BCET
/// run independently on each channel of a 3-channel image.
ImageBuffer enhance(const ImageBuffer& img, Technique technique,
                    const EnhanceParams& params = {});

}  // namespace cxr
