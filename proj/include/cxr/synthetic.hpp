#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cxr/image.hpp"
#include "cxr/manifest.hpp"

namespace cxr {

/// Deterministic chest-radiograph-like test image: bright mediastinum and
/// border, two darker lung fields, and mild noise. Fully determined by
/// (seed, id, size, channels).
ImageBuffer synthetic_cxr(int width, int height, int channels, std::uint64_t seed,
                          std::string_view id);

/// Elliptical lung mask matching the lung fields of synthetic_cxr.
ImageBuffer synthetic_lung_mask(int width, int height);

/// Writes `per_class` PNG images for each class under root/<class>/ and
/// returns the manifest (paths relative to root).
Manifest write_synthetic_dataset(const std::filesystem::path& root,
                                 const std::vector<std::string>& classes, int per_class,
                                 int width, int height, int channels, std::uint64_t seed);

}  // namespace cxr
