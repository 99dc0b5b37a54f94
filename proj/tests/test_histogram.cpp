#include <doctest.h>

#include <random>

#include "cxr/histogram.hpp"
#include "test_support.hpp"

using namespace cxr;

namespace {

// Compensated summation, kept separate from the library's integer moments.
struct KahanStats {
  double l = 255.0, h = 0.0, e = 0.0, s = 0.0;
};

KahanStats kahan_stats(const ImageBuffer& plane) {
  KahanStats out;
  double sum = 0.0, sum_c = 0.0, sq = 0.0, sq_c = 0.0;
  auto add = [](double& acc, double& comp, double v) {
    const double y = v - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  };
  for (auto v : plane.data()) {
    out.l = std::min(out.l, double(v));
    out.h = std::max(out.h, double(v));
    add(sum, sum_c, v);
    add(sq, sq_c, double(v) * v);
  }
  const double n = double(plane.size());
  out.e = sum / n;
  out.s = sq / n;
  return out;
}

}  // namespace

TEST_CASE("histogram matches a naive tally") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto img = testing::random_image(rng, 17 + trial, 9, 1, trial, 255 - trial);
    const auto hist = compute_histogram(img);
    std::uint64_t naive[kLevels] = {};
    for (std::size_t i = 0; i < img.size(); ++i) ++naive[img.data()[i]];
    std::uint64_t sum = 0;
    for (int k = 0; k < kLevels; ++k) {
      REQUIRE(hist.counts[k] == naive[k]);
      sum += hist.counts[k];
    }
    CHECK(sum == img.size());
    CHECK(hist.total == img.size());
  }
}

TEST_CASE("cdf is monotone and ends at exactly one") {
  std::mt19937_64 rng(2);
  const auto hist = compute_histogram(testing::random_image(rng, 31, 29, 1));
  const auto cdf = normalized_cdf(hist);
  for (int k = 1; k < kLevels; ++k) CHECK(cdf[k] >= cdf[k - 1]);
  CHECK(cdf[kLevels - 1] == 1.0);
  const auto p = hist.probabilities();
  double acc = 0.0;
  for (double v : p) acc += v;
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("occupied range") {
  const auto hist = compute_histogram(testing::plane_of(2, 2, {10, 10, 200, 17}));
  CHECK(hist.lowest_occupied() == 10);
  CHECK(hist.highest_occupied() == 200);
  CHECK(Histogram{}.lowest_occupied() == -1);
}

TEST_CASE("stats agree with a compensated-summation oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto img = testing::random_image(rng, 64, 48, 1);
    const auto st = image_stats(img);
    const auto oracle = kahan_stats(img);
    CHECK(st.l == oracle.l);
    CHECK(st.h == oracle.h);
    CHECK(st.e == doctest::Approx(oracle.e).epsilon(1e-9));
    CHECK(st.s == doctest::Approx(oracle.s).epsilon(1e-9));
  }
}

TEST_CASE("stats of a hand example") {
  const auto st = image_stats(testing::plane_of(5, 1, {0, 50, 100, 150, 200}));
  CHECK(st.l == 0.0);
  CHECK(st.h == 200.0);
  CHECK(st.e == 100.0);
  CHECK(st.s == 15000.0);
}
