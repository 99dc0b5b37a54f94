#include "cxr/histogram.hpp"

#include "cxr/error.hpp"

namespace cxr {

std::array<double, kLevels> Histogram::probabilities() const {
  std::array<double, kLevels> p{};
  if (total == 0) return p;
  for (int k = 0; k < kLevels; ++k) {
    p[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  }
  return p;
}

int Histogram::lowest_occupied() const {
  for (int k = 0; k < kLevels; ++k) {
    if (counts[k] != 0) return k;
  }
  return -1;
}

int Histogram::highest_occupied() const {
  for (int k = kLevels - 1; k >= 0; --k) {
    if (counts[k] != 0) return k;
  }
  return -1;
}

Histogram compute_histogram(const ImageBuffer& plane) {
  require_plane(plane, "compute_histogram");
  Histogram hist;
  for (auto v : plane.data()) ++hist.counts[v];
  hist.total = plane.pixel_count();
  return hist;
}

std::array<double, kLevels> normalized_cdf(const Histogram& hist) {
  std::array<double, kLevels> cdf{};
  if (hist.total == 0) return cdf;
  std::uint64_t running = 0;
  const auto total = static_cast<double>(hist.total);
  for (int k = 0; k < kLevels; ++k) {
    running += hist.counts[k];
    cdf[k] = static_cast<double>(running) / total;
  }
  return cdf;
}

ImageStats stats_from_histogram(const Histogram& hist) {
  if (hist.total == 0) {
    throw Error(ErrorCode::kEmptyInput, "image_stats: empty plane");
  }
  // Integer moments are exact up to ~2.8e14 pixels.
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (std::uint64_t k = 0; k < kLevels; ++k) {
    sum += k * hist.counts[k];
    sum_sq += k * k * hist.counts[k];
  }
  const auto n = static_cast<double>(hist.total);
  ImageStats st;
  st.l = hist.lowest_occupied();
  st.h = hist.highest_occupied();
  st.e = static_cast<double>(sum) / n;
  st.s = static_cast<double>(sum_sq) / n;
  return st;
}

ImageStats image_stats(const ImageBuffer& plane) {
  require_plane(plane, "image_stats");
  return stats_from_histogram(compute_histogram(plane));
}

}  // namespace cxr
