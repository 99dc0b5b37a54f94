#include "cxr/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "cxr/error.hpp"

namespace cxr {
namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)), cells_(classes_.size() * classes_.size(), 0) {
  if (classes_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "confusion matrix needs at least one class");
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (std::size_t j = i + 1; j < classes_.size(); ++j) {
      if (classes_[i] == classes_[j]) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate class '" + classes_[i] + "'");
      }
    }
  }
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
  const auto it = std::find(classes_.begin(), classes_.end(), label);
  if (it == classes_.end()) {
    throw Error(ErrorCode::kUnknownLabel, "unknown label '" + label + "'");
  }
  return static_cast<std::size_t>(it - classes_.begin());
}

ConfusionMatrix confusion_from_pairs(
    std::span<const std::pair<std::string, std::string>> pairs,
    const std::vector<std::string>& classes) {
  ConfusionMatrix cm(classes);
  for (const auto& [truth, predicted] : pairs) {
    ++cm.at(cm.index_of(truth), cm.index_of(predicted));
  }
  return cm;
}

ClassificationReport classification_report(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw Error(ErrorCode::kEmptyInput, "classification report: empty matrix");

  const std::size_t k = cm.k();
  ClassificationReport report;
  report.total = total;
  report.weighted.label = "weighted";
  report.macro.label = "macro";

  std::uint64_t correct = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row += cm.at(c, j);
      col += cm.at(j, c);
    }
    const std::uint64_t tp = cm.at(c, c);
    const std::uint64_t fn = row - tp;
    const std::uint64_t fp = col - tp;
    const std::uint64_t tn = total - tp - fn - fp;
    correct += tp;

    ClassMetrics m;
    m.label = cm.classes()[c];
    m.support = row;
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.specificity = ratio(tn, tn + fp);
    m.f1 = ratio(2 * tp, 2 * tp + fn + fp);
    report.per_class.push_back(m);
  }

  const auto n = static_cast<double>(total);
  const auto kd = static_cast<double>(k);
  for (const auto& m : report.per_class) {
    const double w = static_cast<double>(m.support) / n;
    report.weighted.precision += w * m.precision;
    report.weighted.recall += w * m.recall;
    report.weighted.specificity += w * m.specificity;
    report.weighted.f1 += w * m.f1;
    report.macro.precision += m.precision / kd;
    report.macro.recall += m.recall / kd;
    report.macro.specificity += m.specificity / kd;
    report.macro.f1 += m.f1 / kd;
  }
  report.weighted.support = total;
  report.macro.support = total;
  report.overall_accuracy = ratio(correct, total);
  return report;
}

SegScores seg_overlap_scores(const BinaryMask& pred, const BinaryMask& truth) {
  if (pred.width() != truth.width() || pred.height() != truth.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "segmentation masks differ in size");
  }
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
  const auto p = pred.bits();
  const auto t = truth.bits();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] && t[i]) {
      ++tp;
    } else if (p[i]) {
      ++fp;
    } else if (t[i]) {
      ++fn;
    } else {
      ++tn;
    }
  }
  SegScores s;
  s.accuracy = ratio(tp + tn, tp + tn + fp + fn);
  if (tp + fp + fn == 0) {
    s.iou = 1.0;
    s.dice = 1.0;
  } else {
    s.iou = ratio(tp, tp + fn + fp);
    s.dice = ratio(2 * tp, 2 * tp + fn + fp);
  }
  return s;
}

TimingStats summarize_timings(std::vector<double> seconds) {
  TimingStats st;
  st.seconds = std::move(seconds);
  if (st.seconds.empty()) return st;
  std::vector<double> sorted = st.seconds;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  st.min = sorted.front();
  st.max = sorted.back();
  st.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  st.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return st;
}

}  // namespace cxr
