#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cxr/image.hpp"

namespace cxr::testing {

inline ImageBuffer random_image(std::mt19937_64& rng, int width, int height, int channels,
                                int lo = 0, int hi = 255) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * channels);
  for (auto& v : data) v = static_cast<std::uint8_t>(dist(rng));
  return ImageBuffer(width, height, channels, std::move(data));
}

inline ImageBuffer plane_of(int width, int height, std::vector<std::uint8_t> data) {
  return ImageBuffer(width, height, 1, std::move(data));
}

inline ImageBuffer constant_image(int width, int height, int channels, std::uint8_t value) {
  return ImageBuffer(width, height, channels,
                     std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * channels,
                                               value));
}

/// Random non-constant plane.
inline ImageBuffer random_varied_plane(std::mt19937_64& rng, int width, int height) {
  for (;;) {
    auto img = random_image(rng, width, height, 1);
    const auto d = img.data();
    for (auto v : d) {
      if (v != d[0]) return img;
    }
  }
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("cxrprep_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Every regular file under `root` mapped by relative path to its bytes.
std::vector<std::pair<std::string, std::vector<std::uint8_t>>> snapshot_tree(
    const std::filesystem::path& root);

}  // namespace cxr::testing
