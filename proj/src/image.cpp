#include "cxr/image.hpp"

#include <cmath>
#include <string>

#include "cxr/error.hpp"

namespace cxr {
namespace {

void check_shape(int width, int height, int channels) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

std::size_t sample_count(int width, int height, int channels) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
         static_cast<std::size_t>(channels);
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(sample_count(width, height, channels), 0);
}

ImageBuffer::ImageBuffer(int width, int height, int channels,
                         std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != sample_count(width, height, channels)) {
    throw Error(ErrorCode::kInvalidArgument,
                "image data length " + std::to_string(data_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height) + "x" + std::to_string(channels));
  }
}

FloatImage::FloatImage(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(sample_count(width, height, channels), 0.0);
}

FloatImage::FloatImage(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != sample_count(width, height, channels)) {
    throw Error(ErrorCode::kInvalidArgument, "float image data length mismatch");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "float image samples must be finite");
    }
  }
}

ImageBuffer extract_channel(const ImageBuffer& img, int c) {
  if (c < 0 || c >= img.channels()) {
    throw Error(ErrorCode::kInvalidArgument, "channel index out of range");
  }
  ImageBuffer plane(img.width(), img.height(), 1);
  auto src = img.data();
  auto dst = plane.data();
  const auto stride = static_cast<std::size_t>(img.channels());
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = src[i * stride + static_cast<std::size_t>(c)];
  }
  return plane;
}

ImageBuffer merge_channels(std::span<const ImageBuffer> planes) {
  if (planes.size() != 1 && planes.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "merge needs 1 or 3 planes");
  }
  const auto& first = planes.front();
  for (const auto& p : planes) {
    if (p.channels() != 1 || p.width() != first.width() ||
        p.height() != first.height()) {
      throw Error(ErrorCode::kDimensionMismatch, "planes differ in shape");
    }
  }
  const int channels = static_cast<int>(planes.size());
  ImageBuffer out(first.width(), first.height(), channels);
  auto dst = out.data();
  for (int c = 0; c < channels; ++c) {
    auto src = planes[static_cast<std::size_t>(c)].data();
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)] = src[i];
    }
  }
  return out;
}

void require_plane(const ImageBuffer& img, const char* what) {
  if (img.empty()) {
    throw Error(ErrorCode::kEmptyInput, std::string(what) + ": empty plane");
  }
  if (img.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": expected a single-channel plane");
  }
}

}  // namespace cxr
