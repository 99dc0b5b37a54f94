#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cxr {

struct ManifestRow {
  std::string path;
  std::string label;

  friend bool operator==(const ManifestRow&, const ManifestRow&) = default;
};

/// Dataset rows in file order plus the class set they are drawn from.
struct Manifest {
  std::vector<ManifestRow> rows;
  std::vector<std::string> classes;

  /// Row indices carrying `label`, in file order.
  std::vector<std::size_t> rows_of(std::string_view label) const;
};

/// Parses a `path,label` CSV. With `declared_classes` empty, the class set is
/// the labels in order of first appearance; otherwise any other label is
/// rejected with kUnknownLabel. Duplicate paths give kDuplicatePath, a wrong
/// header or field count kMalformedCsv, and a header-only file kEmptyInput.
Manifest parse_manifest(std::string_view text,
                        const std::vector<std::string>& declared_classes = {});
Manifest read_manifest(const std::filesystem::path& path,
                       const std::vector<std::string>& declared_classes = {});

std::string format_manifest(const Manifest& manifest);

}  // namespace cxr
