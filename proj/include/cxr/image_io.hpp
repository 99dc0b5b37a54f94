#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cxr/image.hpp"

namespace cxr {

enum class ImageFormat {
  kPgm,  // binary P5, 1 channel
  kPpm,  // binary P6, 3 channels
  kPng,  // 8-bit gray or RGB
};

/// Decodes P5/P6 netpbm (maxval 255) or PNG bytes. Container type is sniffed
/// from the magic bytes. Errors: kMalformedHeader, kUnsupportedBitDepth,
/// kTruncatedPayload, kUnsupportedFormat.
ImageBuffer decode_image(std::span<const std::uint8_t> bytes);

/// decode_image(encode_image(img, f)) == img for every format accepting
/// img.channels(). PGM with 3 channels or PPM with 1 throws kUnsupportedFormat.
std::vector<std::uint8_t> encode_image(const ImageBuffer& img, ImageFormat format);

/// Picks a container from the file extension (.pgm, .ppm, .pnm, .png).
ImageFormat format_for_path(const std::filesystem::path& path, int channels);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

ImageBuffer read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const ImageBuffer& img);

}  // namespace cxr
