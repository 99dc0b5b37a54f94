#include "cxr/report.hpp"

#include <algorithm>
#include <cstdio>

#include "cxr/csv.hpp"
#include "cxr/error.hpp"
#include "cxr/image_io.hpp"

namespace cxr {
namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

std::vector<Prediction> parse_predictions(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "predictions file is empty");
  const auto& header = records.front().fields;
  if (header.size() != 3 || header[0] != "path" || header[1] != "true_label" ||
      header[2] != "pred_label") {
    throw Error(ErrorCode::kMalformedCsv,
                "predictions header must be 'path,true_label,pred_label'");
  }
  std::vector<Prediction> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    if (f.size() != 3) {
      throw Error(ErrorCode::kMalformedCsv, "predictions line " +
                                                std::to_string(records[i].line) +
                                                ": expected 3 fields");
    }
    out.push_back({f[0], f[1], f[2]});
  }
  if (out.empty()) throw Error(ErrorCode::kEmptyInput, "predictions file has no rows");
  return out;
}

ConfusionMatrix confusion_from_predictions(const std::vector<Prediction>& predictions,
                                           std::vector<std::string> classes) {
  if (classes.empty()) {
    for (const auto& p : predictions) {
      for (const auto* label : {&p.true_label, &p.pred_label}) {
        if (std::find(classes.begin(), classes.end(), *label) == classes.end()) {
          classes.push_back(*label);
        }
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(predictions.size());
  for (const auto& p : predictions) pairs.emplace_back(p.true_label, p.pred_label);
  return confusion_from_pairs(pairs, classes);
}

std::string format_report_text(const ClassificationReport& report, Averaging averaging) {
  const auto& avg = averaging == Averaging::kWeighted ? report.weighted : report.macro;
  const std::string name = averaging == Averaging::kWeighted ? "weighted" : "macro";
  std::string out;
  out += "samples: " + std::to_string(report.total) + "\n";
  out += "accuracy: " + fixed(report.overall_accuracy) + "\n";
  out += name + " precision: " + fixed(avg.precision) + "\n";
  out += name + " recall: " + fixed(avg.recall) + "\n";
  out += name + " f1: " + fixed(avg.f1) + "\n";
  out += name + " specificity: " + fixed(avg.specificity) + "\n";
  out += "\n";

  std::size_t width = 8;
  for (const auto& m : report.per_class) width = std::max(width, m.label.size() + 2);
  out += pad("class", width) + lpad("support", 9) + lpad("precision", 11) +
         lpad("recall", 9) + lpad("f1", 9) + lpad("specificity", 13) + "\n";
  for (const auto& m : report.per_class) {
    out += pad(m.label, width) + lpad(std::to_string(m.support), 9) +
           lpad(fixed(m.precision), 11) + lpad(fixed(m.recall), 9) + lpad(fixed(m.f1), 9) +
           lpad(fixed(m.specificity), 13) + "\n";
  }
  return out;
}

std::string format_report_csv(const ClassificationReport& report) {
  std::string out = "class,support,precision,recall,f1,specificity,accuracy\n";
  const auto row = [](const ClassMetrics& m, const std::string& accuracy) {
    return csv_line({m.label, std::to_string(m.support), fixed(m.precision), fixed(m.recall),
                     fixed(m.f1), fixed(m.specificity), accuracy});
  };
  for (const auto& m : report.per_class) out += row(m, "");
  out += row(report.weighted, fixed(report.overall_accuracy));
  out += row(report.macro, fixed(report.overall_accuracy));
  return out;
}

ReportFiles write_report(const std::filesystem::path& predictions,
                         const std::vector<std::string>& classes,
                         const std::filesystem::path& text_out,
                         const std::filesystem::path& csv_out, Averaging averaging) {
  const auto bytes = read_file(predictions);
  const auto preds = parse_predictions(
      std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  ReportFiles files;
  files.report = classification_report(confusion_from_predictions(preds, classes));
  files.text = format_report_text(files.report, averaging);
  files.csv = format_report_csv(files.report);
  if (!text_out.empty()) write_text(text_out, files.text);
  if (!csv_out.empty()) write_text(csv_out, files.csv);
  return files;
}

std::string format_histogram_csv(const Histogram& hist) {
  std::string out = "bin,count\n";
  for (int k = 0; k < kLevels; ++k) {
    out += std::to_string(k) + "," + std::to_string(hist.counts[static_cast<std::size_t>(k)]) +
           "\n";
  }
  return out;
}

std::vector<std::filesystem::path> dump_histogram(const std::filesystem::path& image,
                                                  const std::filesystem::path& out) {
  const auto img = read_image(image);
  std::vector<std::filesystem::path> written;
  if (img.channels() == 1) {
    write_text(out, format_histogram_csv(compute_histogram(img)));
    written.push_back(out);
    return written;
  }
  static constexpr const char* kSuffix[] = {"_r", "_g", "_b"};
  for (int c = 0; c < img.channels(); ++c) {
    auto path = out;
    path.replace_filename(out.stem().string() + kSuffix[c] + out.extension().string());
    write_text(path, format_histogram_csv(compute_histogram(extract_channel(img, c))));
    written.push_back(path);
  }
  return written;
}

std::string format_timing_table(const std::vector<BenchRow>& rows) {
  std::string out = pad("technique", 12) + lpad("runs", 7) + lpad("mean_ms", 11) +
                    lpad("median_ms", 11) + lpad("min_ms", 11) + lpad("max_ms", 11) + "\n";
  for (const auto& r : rows) {
    out += pad(std::string(technique_id(r.technique)), 12) +
           lpad(std::to_string(r.timing.seconds.size()), 7) +
           lpad(fixed(r.timing.mean * 1e3, 3), 11) + lpad(fixed(r.timing.median * 1e3, 3), 11) +
           lpad(fixed(r.timing.min * 1e3, 3), 11) + lpad(fixed(r.timing.max * 1e3, 3), 11) +
           "\n";
  }
  return out;
}

std::string format_batch_summary(const BatchSummary& summary) {
  std::string out = "processed: " + std::to_string(summary.succeeded) + "/" +
                    std::to_string(summary.total) + "\n";
  out += "failures: " + std::to_string(summary.failures.size()) + "\n";
  if (summary.succeeded > 0) {
    out += "dt_ms mean " + fixed(summary.timing.mean * 1e3, 3) + " median " +
           fixed(summary.timing.median * 1e3, 3) + " min " +
           fixed(summary.timing.min * 1e3, 3) + " max " + fixed(summary.timing.max * 1e3, 3) +
           "\n";
  }
  for (const auto& f : summary.failures) {
    out += "failed " + f.path + " [" + f.code + "] " + f.message + "\n";
  }
  return out;
}

}  // namespace cxr
