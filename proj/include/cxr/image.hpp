#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cxr {

/// 8-bit raster with 1 or 3 interleaved channels, stored row-major.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  /// Zero-filled image. Throws kInvalidArgument on non-positive dims or
  /// channels other than 1 and 3.
  ImageBuffer(int width, int height, int channels);
  ImageBuffer(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int x, int y, int c = 0) const noexcept {
    return data_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c = 0) noexcept { return data_[index(x, y, c)]; }

  bool same_shape(const ImageBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Real-valued raster with the same layout as ImageBuffer. Samples are finite.
class FloatImage {
 public:
  FloatImage() = default;
  FloatImage(int width, int height, int channels);
  FloatImage(int width, int height, int channels, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  friend bool operator==(const FloatImage&, const FloatImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Copies channel `c` out as a single-channel plane.
ImageBuffer extract_channel(const ImageBuffer& img, int c);

/// Interleaves equally sized single-channel planes into one image.
ImageBuffer merge_channels(std::span<const ImageBuffer> planes);

/// Throws kInvalidArgument unless `img` has exactly one channel and pixels.
void require_plane(const ImageBuffer& img, const char* what);

}  // namespace cxr
