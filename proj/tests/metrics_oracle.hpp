#pragma once

// Independent re-derivations shared by the metrics unit tests and the
// acceptance runner.

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "cxr/metrics.hpp"
#include "cxr/preprocess.hpp"

namespace cxr::testing {

/// k in [2, 5], cells in [0, 50], never all zero.
inline ConfusionMatrix random_confusion(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kdist(2, 5);
  std::uniform_int_distribution<int> cell(0, 50);
  const int k = kdist(rng);
  std::vector<std::string> classes;
  for (int i = 0; i < k; ++i) classes.push_back("c" + std::to_string(i));
  ConfusionMatrix cm(classes);
  while (cm.total() == 0) {
    for (int t = 0; t < k; ++t) {
      for (int p = 0; p < k; ++p) cm.at(t, p) = static_cast<std::uint64_t>(cell(rng));
    }
  }
  return cm;
}

/// Brute force: classify every cell of the matrix as TP/FP/FN/TN per class.
inline ClassificationReport oracle_report(const ConfusionMatrix& cm) {
  const std::size_t k = cm.k();
  ClassificationReport r;
  double total = 0.0, correct = 0.0;
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t p = 0; p < k; ++p) {
      total += double(cm.at(t, p));
      if (t == p) correct += double(cm.at(t, p));
    }
  }
  r.total = static_cast<std::uint64_t>(total);
  r.overall_accuracy = correct / total;
  auto ratio = [](double a, double b) { return b == 0.0 ? 0.0 : a / b; };
  for (std::size_t c = 0; c < k; ++c) {
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t p = 0; p < k; ++p) {
        const double n = double(cm.at(t, p));
        if (t == c && p == c) tp += n;
        else if (t == c) fn += n;
        else if (p == c) fp += n;
        else tn += n;
      }
    }
    ClassMetrics m;
    m.label = cm.classes()[c];
    m.support = static_cast<std::uint64_t>(tp + fn);
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.specificity = ratio(tn, tn + fp);
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    r.per_class.push_back(m);
  }
  r.weighted.label = "weighted";
  r.macro.label = "macro";
  for (const auto& m : r.per_class) {
    const double w = double(m.support) / total;
    r.weighted.precision += w * m.precision;
    r.weighted.recall += w * m.recall;
    r.weighted.specificity += w * m.specificity;
    r.weighted.f1 += w * m.f1;
    r.macro.precision += m.precision / double(k);
    r.macro.recall += m.recall / double(k);
    r.macro.specificity += m.specificity / double(k);
    r.macro.f1 += m.f1 / double(k);
  }
  r.weighted.support = r.macro.support = r.total;
  return r;
}

/// Largest absolute difference over every reported number.
inline double report_distance(const ClassificationReport& a, const ClassificationReport& b) {
  if (a.per_class.size() != b.per_class.size() || a.total != b.total) return INFINITY;
  double d = std::abs(a.overall_accuracy - b.overall_accuracy);
  auto cmp = [&](const ClassMetrics& x, const ClassMetrics& y) {
    if (x.support != y.support) d = INFINITY;
    d = std::max({d, std::abs(x.precision - y.precision), std::abs(x.recall - y.recall),
                  std::abs(x.specificity - y.specificity), std::abs(x.f1 - y.f1)});
  };
  for (std::size_t i = 0; i < a.per_class.size(); ++i) cmp(a.per_class[i], b.per_class[i]);
  cmp(a.weighted, b.weighted);
  cmp(a.macro, b.macro);
  return d;
}

inline std::pair<BinaryMask, BinaryMask> random_mask_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 40);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  const int w = dim(rng), h = dim(rng);
  const double pa = density(rng), pb = density(rng);
  std::bernoulli_distribution a(pa), b(pb);
  std::vector<std::uint8_t> x(static_cast<std::size_t>(w) * h), y(x.size());
  for (auto& v : x) v = a(rng);
  for (auto& v : y) v = b(rng);
  return {BinaryMask(w, h, x), BinaryMask(w, h, y)};
}

}  // namespace cxr::testing
