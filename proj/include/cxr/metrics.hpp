#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cxr/preprocess.hpp"

namespace cxr {

/// Rows are true classes, columns predicted classes, in `classes` order.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::vector<std::string> classes);

  std::size_t k() const noexcept { return classes_.size(); }
  const std::vector<std::string>& classes() const noexcept { return classes_; }

  std::uint64_t at(std::size_t truth, std::size_t predicted) const {
    return cells_[truth * k() + predicted];
  }
  std::uint64_t& at(std::size_t truth, std::size_t predicted) {
    return cells_[truth * k() + predicted];
  }
  std::uint64_t total() const noexcept;
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> classes_;
  std::vector<std::uint64_t> cells_;
};

struct ClassMetrics {
  std::string label;
  std::uint64_t support = 0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
};

struct ClassificationReport {
  std::vector<ClassMetrics> per_class;
  std::uint64_t total = 0;
  double overall_accuracy = 0.0;
  ClassMetrics weighted;  // support-weighted means
  ClassMetrics macro;     // unweighted means
};

ConfusionMatrix confusion_from_pairs(
    std::span<const std::pair<std::string, std::string>> pairs,
    const std::vector<std::string>& classes);

/// One-vs-rest metrics per class; any 0/0 is reported as 0. Throws
/// kEmptyInput when the matrix has no entries.
ClassificationReport classification_report(const ConfusionMatrix& cm);

struct SegScores {
  double accuracy = 0.0;
  double iou = 0.0;
  double dice = 0.0;
};

/// Pixelwise overlap of predicted and reference lung masks. Two empty masks
/// score 1 on every metric.
SegScores seg_overlap_scores(const BinaryMask& pred, const BinaryMask& truth);

struct TimingStats {
  std::vector<double> seconds;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

TimingStats summarize_timings(std::vector<double> seconds);

template <class T>
struct Timed {
  T value;
  double seconds;
};

/// Runs `work` between two monotonic clock reads. Returns the elapsed seconds
/// for void work, otherwise the result paired with the elapsed seconds.
template <class Work>
auto time_block(Work&& work) {
  using Clock = std::chrono::steady_clock;
  using Result = std::invoke_result_t<Work>;
  const auto t1 = Clock::now();
  if constexpr (std::is_void_v<Result>) {
    std::forward<Work>(work)();
    const auto t2 = Clock::now();
    return std::chrono::duration<double>(t2 - t1).count();
  } else {
    Result value = std::forward<Work>(work)();
    const auto t2 = Clock::now();
    return Timed<Result>{std::move(value), std::chrono::duration<double>(t2 - t1).count()};
  }
}

}  // namespace cxr
