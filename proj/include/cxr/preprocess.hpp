#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "cxr/image.hpp"

namespace cxr {

struct ResizeSpec {
  int target_w = 224;
  int target_h = 224;
};

struct AugmentSpec {
  int copies_per_image = 1;
  double max_abs_angle = 10.0;  // degrees, in (0, 45]
  std::uint64_t seed = 0;
};

inline constexpr double kMaxRotationDegrees = 45.0;

/// Per-pixel lung mask; 1 keeps the pixel, 0 blanks it.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  /// Single-channel image, intensity >= 128 marks lung.
  static BinaryMask from_image(const ImageBuffer& img);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  bool at(int x, int y) const noexcept {
    return bits_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)] != 0;
  }
  /// Image with 255 for lung and 0 elsewhere.
  ImageBuffer to_image() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Bilinear resampling with half-pixel centers and edge clamping.
ImageBuffer resize_bilinear(const ImageBuffer& img, const ResizeSpec& spec);

/// (x - mean) / stddev with population statistics, per channel. A channel with
/// zero deviation maps to all zeros.
FloatImage zscore_normalize(const ImageBuffer& img);

/// Counter-clockwise rotation (as displayed, y down) about the image center,
/// bilinear resampling, 0 outside the source frame. |angle| <= 45.
ImageBuffer rotate(const ImageBuffer& img, double angle_degrees);

/// Angles of the rotated copies for one image; depends only on
/// (spec.seed, image_id, spec).
std::vector<double> augmentation_angles(const AugmentSpec& spec, std::string_view image_id);

std::vector<ImageBuffer> augment_rotations(const ImageBuffer& img, const AugmentSpec& spec,
                                           std::string_view image_id);

ImageBuffer apply_mask(const ImageBuffer& img, const BinaryMask& mask);

/// Raw float32 little-endian samples behind a 12-byte header of three
/// little-endian uint32: width, height, channels.
std::vector<std::uint8_t> encode_float_image(const FloatImage& img);
FloatImage decode_float_image(std::span<const std::uint8_t> bytes);

}  // namespace cxr
