#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cxr/batch.hpp"
#include "cxr/histogram.hpp"
#include "cxr/metrics.hpp"

namespace cxr {

struct Prediction {
  std::string path;
  std::string true_label;
  std::string pred_label;
};

enum class Averaging { kWeighted, kMacro };

/// `path,true_label,pred_label` CSV. kMalformedCsv on a bad header or row,
/// kEmptyInput without data rows.
std::vector<Prediction> parse_predictions(std::string_view text);

/// With `classes` empty the class list is every label in order of first
/// appearance (true labels before predictions on each row).
ConfusionMatrix confusion_from_predictions(const std::vector<Prediction>& predictions,
                                           std::vector<std::string> classes = {});

/// Human-readable report, fractions to 4 decimals.
std::string format_report_text(const ClassificationReport& report,
                               Averaging averaging = Averaging::kWeighted);

/// `class,support,precision,recall,f1,specificity,accuracy` rows per class,
/// then `weighted` and `macro` rows carrying the overall accuracy.
std::string format_report_csv(const ClassificationReport& report);

struct ReportFiles {
  ClassificationReport report;
  std::string text;
  std::string csv;
};

/// Reads predictions, writes the text report to `text_out` and the CSV to
/// `csv_out` (either may be empty to skip), and returns both.
ReportFiles write_report(const std::filesystem::path& predictions,
                         const std::vector<std::string>& classes,
                         const std::filesystem::path& text_out,
                         const std::filesystem::path& csv_out,
                         Averaging averaging = Averaging::kWeighted);

/// `bin,count` header plus 256 rows.
std::string format_histogram_csv(const Histogram& hist);

/// Writes one CSV per channel; 3-channel images get _r, _g, _b suffixes.
/// Returns the paths written.
std::vector<std::filesystem::path> dump_histogram(const std::filesystem::path& image,
                                                  const std::filesystem::path& out);

/// Elapsed time table, one row per technique, times in milliseconds.
std::string format_timing_table(const std::vector<BenchRow>& rows);

std::string format_batch_summary(const BatchSummary& summary);

}  // namespace cxr
