#include "test_support.hpp"

#include <algorithm>

#include "cxr/image_io.hpp"

namespace cxr::testing {

std::vector<std::pair<std::string, std::vector<std::uint8_t>>> snapshot_tree(
    const std::filesystem::path& root) {
  std::vector<std::pair<std::string, std::vector<std::uint8_t>>> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    files.emplace_back(std::filesystem::relative(entry.path(), root).generic_string(),
                       read_file(entry.path()));
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace cxr::testing
