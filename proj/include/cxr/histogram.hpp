#pragma once

#include <array>
#include <cstdint>

#include "cxr/image.hpp"

namespace cxr {

inline constexpr int kLevels = 256;

/// Per-intensity pixel tally of one plane. `total` is the plane's pixel count.
struct Histogram {
  std::array<std::uint64_t, kLevels> counts{};
  std::uint64_t total = 0;

  /// Normalized probability of intensity k (count / total).
  std::array<double, kLevels> probabilities() const;
  /// Lowest and highest occupied bins; -1 when the histogram is empty.
  int lowest_occupied() const;
  int highest_occupied() const;
};

/// Scalar statistics of a plane: min, max, population mean, and the population
/// mean of squared intensities (the `s` term of the BCET fit).
struct ImageStats {
  double l = 0.0;
  double h = 0.0;
  double e = 0.0;
  double s = 0.0;
};

Histogram compute_histogram(const ImageBuffer& plane);

/// Cumulative distribution; exactly 1.0 at the last bin for a nonempty
/// histogram since it is formed from integer partial sums.
std::array<double, kLevels> normalized_cdf(const Histogram& hist);

ImageStats image_stats(const ImageBuffer& plane);
ImageStats stats_from_histogram(const Histogram& hist);

}  // namespace cxr
