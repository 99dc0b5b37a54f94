#include "cxr/manifest.hpp"

#include <algorithm>
#include <unordered_set>

#include "cxr/csv.hpp"
#include "cxr/error.hpp"
#include "cxr/image_io.hpp"

namespace cxr {

std::vector<std::size_t> Manifest::rows_of(std::string_view label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].label == label) out.push_back(i);
  }
  return out;
}

Manifest parse_manifest(std::string_view text,
                        const std::vector<std::string>& declared_classes) {
  const auto records = parse_csv(text);
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "manifest is empty");
  const auto& header = records.front().fields;
  if (header.size() != 2 || header[0] != "path" || header[1] != "label") {
    throw Error(ErrorCode::kMalformedCsv, "manifest header must be 'path,label'");
  }

  Manifest m;
  m.classes = declared_classes;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (rec.fields.size() != 2) {
      throw Error(ErrorCode::kMalformedCsv, "manifest line " + std::to_string(rec.line) +
                                                ": expected 2 fields, got " +
                                                std::to_string(rec.fields.size()));
    }
    const auto& path = rec.fields[0];
    const auto& label = rec.fields[1];
    if (path.empty() || label.empty()) {
      throw Error(ErrorCode::kMalformedCsv,
                  "manifest line " + std::to_string(rec.line) + ": empty path or label");
    }
    if (!seen.insert(path).second) {
      throw Error(ErrorCode::kDuplicatePath, "duplicate manifest path '" + path + "'");
    }
    if (std::find(m.classes.begin(), m.classes.end(), label) == m.classes.end()) {
      if (!declared_classes.empty()) {
        throw Error(ErrorCode::kUnknownLabel, "manifest line " + std::to_string(rec.line) +
                                                  ": unknown label '" + label + "'");
      }
      m.classes.push_back(label);
    }
    m.rows.push_back({path, label});
  }
  if (m.rows.empty()) throw Error(ErrorCode::kEmptyInput, "manifest has no rows");
  return m;
}

Manifest read_manifest(const std::filesystem::path& path,
                       const std::vector<std::string>& declared_classes) {
  const auto bytes = read_file(path);
  return parse_manifest(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                         bytes.size()),
                        declared_classes);
}

std::string format_manifest(const Manifest& manifest) {
  std::string out = "path,label\n";
  for (const auto& row : manifest.rows) out += csv_line({row.path, row.label});
  return out;
}

}  // namespace cxr
