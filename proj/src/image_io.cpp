#include "cxr/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "cxr/error.hpp"

namespace cxr {
namespace {

// ---------------------------------------------------------------------------
// netpbm

constexpr std::size_t kMaxDimension = 1u << 16;

struct PnmCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  bool at_end() const { return pos >= bytes.size(); }

  void skip_whitespace_and_comments() {
    while (!at_end()) {
      const auto ch = bytes[pos];
      if (ch == '#') {
        while (!at_end() && bytes[pos] != '\n' && bytes[pos] != '\r') ++pos;
      } else if (std::isspace(ch)) {
        ++pos;
      } else {
        return;
      }
    }
  }

  unsigned long read_uint(const char* field) {
    skip_whitespace_and_comments();
    if (at_end() || !std::isdigit(bytes[pos])) {
      throw Error(ErrorCode::kMalformedHeader,
                  std::string("netpbm header: expected ") + field);
    }
    unsigned long value = 0;
    while (!at_end() && std::isdigit(bytes[pos])) {
      value = value * 10 + static_cast<unsigned long>(bytes[pos] - '0');
      if (value > 1'000'000'000ul) {
        throw Error(ErrorCode::kMalformedHeader,
                    std::string("netpbm header: ") + field + " out of range");
      }
      ++pos;
    }
    return value;
  }
};

ImageBuffer decode_pnm(std::span<const std::uint8_t> bytes) {
  const int channels = bytes[1] == '5' ? 1 : 3;
  PnmCursor cur{bytes, 2};
  const auto width = cur.read_uint("width");
  const auto height = cur.read_uint("height");
  const auto maxval = cur.read_uint("maxval");
  if (width == 0 || height == 0 || width > kMaxDimension || height > kMaxDimension) {
    throw Error(ErrorCode::kMalformedHeader, "netpbm header: invalid dimensions");
  }
  if (maxval == 0 || maxval > 65535) {
    throw Error(ErrorCode::kMalformedHeader, "netpbm header: invalid maxval");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::kUnsupportedBitDepth,
                "netpbm maxval " + std::to_string(maxval) + " unsupported, need 255");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (cur.at_end() || !std::isspace(bytes[cur.pos])) {
    throw Error(ErrorCode::kMalformedHeader, "netpbm header: missing separator");
  }
  ++cur.pos;
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  const std::size_t have = bytes.size() - cur.pos;
  if (have < need) {
    throw Error(ErrorCode::kTruncatedPayload,
                "netpbm payload has " + std::to_string(have) + " bytes, expected " +
                    std::to_string(need));
  }
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos + need));
  return ImageBuffer(static_cast<int>(width), static_cast<int>(height), channels,
                     std::move(data));
}

std::vector<std::uint8_t> encode_pnm(const ImageBuffer& img) {
  const std::string header = std::string(img.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

// ---------------------------------------------------------------------------
// PNG via libpng. The setjmp frames below hold only trivially destructible
// locals; buffers are owned by the callers.

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G',
                                                        '\r', '\n', 0x1a, '\n'};

struct PngReadState {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
  bool truncated;
  char message[256];
};

void png_read_callback(png_structp png, png_bytep out, png_size_t length) {
  auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
  if (state->size - state->pos < length) {
    state->truncated = true;
    png_error(png, "unexpected end of data");
  }
  std::memcpy(out, state->data + state->pos, length);
  state->pos += length;
}

void png_error_callback(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngReadState*>(png_get_error_ptr(png));
  if (state != nullptr) {
    std::snprintf(state->message, sizeof(state->message), "%s", msg);
  }
  png_longjmp(png, 1);
}

void png_warning_callback(png_structp, png_const_charp) {}

struct PngHeader {
  png_uint_32 width;
  png_uint_32 height;
  int bit_depth;
  int color_type;
};

// Returns 0 on success, 1 on libpng error.
int png_read_header(PngReadState* state, PngHeader* header) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state,
                                           png_error_callback, png_warning_callback);
  if (png == nullptr) return 1;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return 1;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return 1;
  }
  png_set_read_fn(png, state, png_read_callback);
  png_read_info(png, info);
  header->width = png_get_image_width(png, info);
  header->height = png_get_image_height(png, info);
  header->bit_depth = png_get_bit_depth(png, info);
  header->color_type = png_get_color_type(png, info);
  png_destroy_read_struct(&png, &info, nullptr);
  return 0;
}

int png_read_pixels(PngReadState* state, png_bytepp rows) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, state,
                                           png_error_callback, png_warning_callback);
  if (png == nullptr) return 1;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return 1;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return 1;
  }
  png_set_read_fn(png, state, png_read_callback);
  png_read_info(png, info);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  png_read_image(png, rows);
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return 0;
}

[[noreturn]] void throw_png_failure(const PngReadState& state) {
  if (state.truncated) {
    throw Error(ErrorCode::kTruncatedPayload,
                std::string("png: ") + state.message);
  }
  throw Error(ErrorCode::kMalformedHeader, std::string("png: ") + state.message);
}

ImageBuffer decode_png(std::span<const std::uint8_t> bytes) {
  PngReadState state{bytes.data(), bytes.size(), 0, false, {}};
  PngHeader header{};
  if (png_read_header(&state, &header) != 0) throw_png_failure(state);

  if (header.bit_depth != 8) {
    throw Error(ErrorCode::kUnsupportedBitDepth,
                "png bit depth " + std::to_string(header.bit_depth) +
                    " unsupported, need 8");
  }
  int channels = 0;
  if (header.color_type == PNG_COLOR_TYPE_GRAY) {
    channels = 1;
  } else if (header.color_type == PNG_COLOR_TYPE_RGB) {
    channels = 3;
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                "png color type " + std::to_string(header.color_type) +
                    " unsupported, need gray or RGB");
  }
  if (header.width > kMaxDimension || header.height > kMaxDimension) {
    throw Error(ErrorCode::kMalformedHeader, "png: dimensions too large");
  }

  ImageBuffer img(static_cast<int>(header.width), static_cast<int>(header.height),
                  channels);
  std::vector<png_bytep> rows(header.height);
  const std::size_t stride = static_cast<std::size_t>(header.width) * channels;
  for (png_uint_32 y = 0; y < header.height; ++y) {
    rows[y] = img.data().data() + y * stride;
  }
  state.pos = 0;
  if (png_read_pixels(&state, rows.data()) != 0) throw_png_failure(state);
  return img;
}

struct PngWriteState {
  std::vector<std::uint8_t>* out;
};

void png_write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* state = static_cast<PngWriteState*>(png_get_io_ptr(png));
  state->out->insert(state->out->end(), data, data + length);
}

void png_flush_callback(png_structp) {}

int png_write_pixels(PngWriteState* state, PngReadState* errors, png_uint_32 width,
                     png_uint_32 height, int color_type, png_bytepp rows) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, errors,
                                            png_error_callback, png_warning_callback);
  if (png == nullptr) return 1;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    return 1;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return 1;
  }
  png_set_write_fn(png, state, png_write_callback, png_flush_callback);
  png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return 0;
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& img) {
  std::vector<std::uint8_t> out;
  // libpng takes non-const row pointers even for writing.
  std::vector<std::uint8_t> pixels(img.data().begin(), img.data().end());
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  const std::size_t stride = static_cast<std::size_t>(img.width()) * img.channels();
  for (std::size_t y = 0; y < rows.size(); ++y) rows[y] = pixels.data() + y * stride;

  PngWriteState state{&out};
  PngReadState errors{nullptr, 0, 0, false, {}};
  const int color_type = img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
  if (png_write_pixels(&state, &errors, static_cast<png_uint_32>(img.width()),
                       static_cast<png_uint_32>(img.height()), color_type,
                       rows.data()) != 0) {
    throw Error(ErrorCode::kIo, std::string("png encode failed: ") + errors.message);
  }
  return out;
}

std::string lower_extension(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

}  // namespace

ImageBuffer decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return decode_pnm(bytes);
  }
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return decode_png(bytes);
  }
  throw Error(ErrorCode::kMalformedHeader, "unrecognized image container");
}

std::vector<std::uint8_t> encode_image(const ImageBuffer& img, ImageFormat format) {
  if (img.empty()) throw Error(ErrorCode::kEmptyInput, "cannot encode an empty image");
  switch (format) {
    case ImageFormat::kPgm:
      if (img.channels() != 1) {
        throw Error(ErrorCode::kUnsupportedFormat, "graymap needs a 1-channel image");
      }
      return encode_pnm(img);
    case ImageFormat::kPpm:
      if (img.channels() != 3) {
        throw Error(ErrorCode::kUnsupportedFormat, "pixmap needs a 3-channel image");
      }
      return encode_pnm(img);
    case ImageFormat::kPng:
      return encode_png(img);
  }
  throw Error(ErrorCode::kUnsupportedFormat, "unknown image format");
}

ImageFormat format_for_path(const std::filesystem::path& path, int channels) {
  const auto ext = lower_extension(path);
  if (ext == ".png") return ImageFormat::kPng;
  if (ext == ".pgm") return ImageFormat::kPgm;
  if (ext == ".ppm") return ImageFormat::kPpm;
  if (ext == ".pnm") return channels == 1 ? ImageFormat::kPgm : ImageFormat::kPpm;
  throw Error(ErrorCode::kUnsupportedFormat,
              "unsupported image extension '" + ext + "' for " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

ImageBuffer read_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_image(const std::filesystem::path& path, const ImageBuffer& img) {
  write_file(path, encode_image(img, format_for_path(path, img.channels())));
}

}  // namespace cxr
