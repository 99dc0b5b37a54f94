#include "cxr/preprocess.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "cxr/error.hpp"
#include "cxr/random.hpp"

namespace cxr {
namespace {

std::uint8_t clamp_round(double v) {
  if (!(v > 0.0)) return 0;
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v));
}

// Source sample position for output index j under half-pixel centers.
struct Tap {
  int lo;
  int hi;
  double weight;
};

std::vector<Tap> resize_taps(int src_extent, int dst_extent) {
  std::vector<Tap> taps(static_cast<std::size_t>(dst_extent));
  const double scale = static_cast<double>(src_extent) / dst_extent;
  for (int j = 0; j < dst_extent; ++j) {
    double s = (j + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_extent - 1));
    const int lo = static_cast<int>(std::floor(s));
    const int hi = std::min(lo + 1, src_extent - 1);
    taps[static_cast<std::size_t>(j)] = {lo, hi, s - lo};
  }
  return taps;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width <= 0 || height <= 0 ||
      bits_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kInvalidArgument, "mask size does not match its dimensions");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

BinaryMask BinaryMask::from_image(const ImageBuffer& img) {
  require_plane(img, "mask");
  std::vector<std::uint8_t> bits(img.size());
  std::transform(img.data().begin(), img.data().end(), bits.begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v >= 128); });
  return BinaryMask(img.width(), img.height(), std::move(bits));
}

ImageBuffer BinaryMask::to_image() const {
  std::vector<std::uint8_t> data(bits_.size());
  std::transform(bits_.begin(), bits_.end(), data.begin(),
                 [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
  return ImageBuffer(width_, height_, 1, std::move(data));
}

ImageBuffer resize_bilinear(const ImageBuffer& img, const ResizeSpec& spec) {
  if (img.empty()) throw Error(ErrorCode::kEmptyInput, "resize: empty image");
  if (spec.target_w < 1 || spec.target_h < 1) {
    throw Error(ErrorCode::kInvalidArgument, "resize: target dimensions must be >= 1");
  }
  const auto tx = resize_taps(img.width(), spec.target_w);
  const auto ty = resize_taps(img.height(), spec.target_h);
  const int ch = img.channels();
  ImageBuffer out(spec.target_w, spec.target_h, ch);
  for (int y = 0; y < spec.target_h; ++y) {
    const auto& vy = ty[static_cast<std::size_t>(y)];
    for (int x = 0; x < spec.target_w; ++x) {
      const auto& vx = tx[static_cast<std::size_t>(x)];
      for (int c = 0; c < ch; ++c) {
        const double p00 = img.at(vx.lo, vy.lo, c);
        const double p01 = img.at(vx.hi, vy.lo, c);
        const double p10 = img.at(vx.lo, vy.hi, c);
        const double p11 = img.at(vx.hi, vy.hi, c);
        const double top = p00 + (p01 - p00) * vx.weight;
        const double bottom = p10 + (p11 - p10) * vx.weight;
        out.at(x, y, c) = clamp_round(top + (bottom - top) * vy.weight);
      }
    }
  }
  return out;
}

FloatImage zscore_normalize(const ImageBuffer& img) {
  if (img.empty()) throw Error(ErrorCode::kEmptyInput, "zscore: empty image");
  const auto ch = static_cast<std::size_t>(img.channels());
  const std::size_t n = img.pixel_count();
  const auto src = img.data();
  std::vector<double> out(src.size(), 0.0);
  for (std::size_t c = 0; c < ch; ++c) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += src[i * ch + c];
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = src[i * ch + c] - mean;
      sq += d * d;
    }
    const double sigma = std::sqrt(sq / static_cast<double>(n));
    if (sigma == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i * ch + c] = (src[i * ch + c] - mean) / sigma;
  }
  return FloatImage(img.width(), img.height(), img.channels(), std::move(out));
}

ImageBuffer rotate(const ImageBuffer& img, double angle_degrees) {
  if (img.empty()) throw Error(ErrorCode::kEmptyInput, "rotate: empty image");
  if (!(std::abs(angle_degrees) <= kMaxRotationDegrees)) {
    throw Error(ErrorCode::kInvalidArgument,
                "rotate: |angle| must be <= 45 degrees, got " + std::to_string(angle_degrees));
  }
  if (angle_degrees == 0.0) return img;

  const double theta = angle_degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = (img.width() - 1) / 2.0;
  const double cy = (img.height() - 1) / 2.0;
  const double max_x = img.width() - 1;
  const double max_y = img.height() - 1;
  constexpr double kEdgeSlack = 1e-9;

  ImageBuffer out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      double sx = cx + cs * dx - sn * dy;
      double sy = cy + sn * dx + cs * dy;
      if (sx < -kEdgeSlack || sy < -kEdgeSlack || sx > max_x + kEdgeSlack ||
          sy > max_y + kEdgeSlack) {
        continue;
      }
      sx = std::clamp(sx, 0.0, max_x);
      sy = std::clamp(sy, 0.0, max_y);
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const int x1 = std::min(x0 + 1, img.width() - 1);
      const int y1 = std::min(y0 + 1, img.height() - 1);
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int c = 0; c < img.channels(); ++c) {
        const double p00 = img.at(x0, y0, c);
        const double p01 = img.at(x1, y0, c);
        const double p10 = img.at(x0, y1, c);
        const double p11 = img.at(x1, y1, c);
        const double top = p00 + (p01 - p00) * fx;
        const double bottom = p10 + (p11 - p10) * fx;
        out.at(x, y, c) = clamp_round(top + (bottom - top) * fy);
      }
    }
  }
  return out;
}

std::vector<double> augmentation_angles(const AugmentSpec& spec, std::string_view image_id) {
  if (spec.copies_per_image < 0) {
    throw Error(ErrorCode::kInvalidArgument, "augment: copies_per_image must be >= 0");
  }
  if (!(spec.max_abs_angle > 0.0 && spec.max_abs_angle <= kMaxRotationDegrees)) {
    throw Error(ErrorCode::kInvalidArgument, "augment: max_abs_angle must lie in (0, 45]");
  }
  KeyedRng rng(spec.seed, image_id);
  std::vector<double> angles(static_cast<std::size_t>(spec.copies_per_image));
  for (auto& a : angles) a = spec.max_abs_angle * (2.0 * rng.unit() - 1.0);
  return angles;
}

std::vector<ImageBuffer> augment_rotations(const ImageBuffer& img, const AugmentSpec& spec,
                                           std::string_view image_id) {
  std::vector<ImageBuffer> out;
  for (double angle : augmentation_angles(spec, image_id)) out.push_back(rotate(img, angle));
  return out;
}

ImageBuffer apply_mask(const ImageBuffer& img, const BinaryMask& mask) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mask " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                    " does not match image " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()));
  }
  ImageBuffer out = img;
  auto dst = out.data();
  const auto bits = mask.bits();
  const auto ch = static_cast<std::size_t>(img.channels());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) continue;
    for (std::size_t c = 0; c < ch; ++c) dst[i * ch + c] = 0;
  }
  return out;
}

std::vector<std::uint8_t> encode_float_image(const FloatImage& img) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + img.size() * 4);
  put_u32(out, static_cast<std::uint32_t>(img.width()));
  put_u32(out, static_cast<std::uint32_t>(img.height()));
  put_u32(out, static_cast<std::uint32_t>(img.channels()));
  for (double v : img.data()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

FloatImage decode_float_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) throw Error(ErrorCode::kMalformedHeader, "float image: short header");
  const auto w = get_u32(bytes, 0);
  const auto h = get_u32(bytes, 4);
  const auto c = get_u32(bytes, 8);
  if (w == 0 || h == 0 || (c != 1 && c != 3) || w > (1u << 16) || h > (1u << 16)) {
    throw Error(ErrorCode::kMalformedHeader, "float image: invalid header");
  }
  const std::size_t n = static_cast<std::size_t>(w) * h * c;
  if (bytes.size() - 12 < n * 4) {
    throw Error(ErrorCode::kTruncatedPayload, "float image: truncated payload");
  }
  std::vector<double> data(n);
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * i));
  }
  return FloatImage(static_cast<int>(w), static_cast<int>(h), static_cast<int>(c),
                    std::move(data));
}

}  // namespace cxr
