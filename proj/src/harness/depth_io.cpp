#include "depthbench/depth_io.hpp"

#include <png.h>

#include <bit>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstring>
#include <limits>
#include <string>

#include "depthbench/error.hpp"
#include "depthbench/image_io.hpp"

namespace depthbench {

namespace {

struct MemReader {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void read_fn(png_structp png, png_bytep out, png_size_t n) {
  auto* r = static_cast<MemReader*>(png_get_io_ptr(png));
  if (r->pos + n > r->bytes.size()) png_error(png, "truncated stream");
  std::memcpy(out, r->bytes.data() + r->pos, n);
  r->pos += n;
}

void write_fn(png_structp png, png_bytep data, png_size_t n) {
  auto* v = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  v->insert(v->end(), data, data + n);
}

void flush_fn(png_structp) {}

// libpng reports errors by longjmp, so the two functions below keep every
// non-trivial object in the caller's frame.
struct GrayPng {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  std::vector<std::uint8_t> buf;
  std::vector<png_bytep> rows;
};

const char* read_gray_png(std::span<const std::uint8_t> bytes, GrayPng& img) {
  MemReader reader{bytes};
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return "libpng initialisation failed";
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return "libpng initialisation failed";
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return "corrupt depth PNG";
  }
  png_set_read_fn(png, &reader, read_fn);
  png_read_info(png, info);
  int color = 0;
  png_get_IHDR(png, info, &img.width, &img.height, &img.bit_depth, &color, nullptr, nullptr, nullptr);
  if (color != PNG_COLOR_TYPE_GRAY || (img.bit_depth != 8 && img.bit_depth != 16)) {
    png_destroy_read_struct(&png, &info, nullptr);
    return "depth PNG must be 8- or 16-bit grayscale";
  }
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  img.buf.resize(row_bytes * img.height);
  img.rows.resize(img.height);
  for (png_uint_32 y = 0; y < img.height; ++y) img.rows[y] = img.buf.data() + y * row_bytes;
  png_read_image(png, img.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return nullptr;
}

const char* write_gray_png(GrayPng& img, std::vector<std::uint8_t>& out) {
  const std::size_t row_bytes = static_cast<std::size_t>(img.width) * (img.bit_depth / 8);
  img.rows.resize(img.height);
  for (png_uint_32 y = 0; y < img.height; ++y) img.rows[y] = img.buf.data() + y * row_bytes;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return "libpng initialisation failed";
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return "libpng initialisation failed";
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return "depth PNG encoding failed";
  }
  png_set_write_fn(png, &out, write_fn, flush_fn);
  png_set_IHDR(png, info, img.width, img.height, img.bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, img.rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return nullptr;
}

void check_divisor(double divisor) {
  if (!(divisor > 0.0) || !std::isfinite(divisor)) {
    throw Error(Errc::invalid_parameter, "depth scale divisor must be positive");
  }
}

float read_f32(const std::uint8_t* p, bool little) {
  std::uint32_t u = 0;
  std::memcpy(&u, p, 4);
  if ((std::endian::native == std::endian::little) != little) u = __builtin_bswap32(u);
  return std::bit_cast<float>(u);
}

}  // namespace

std::string_view name(DepthFormat format) { return format == DepthFormat::png16 ? "png16" : "pfm"; }

std::string_view extension(DepthFormat format) { return format == DepthFormat::png16 ? ".png" : ".pfm"; }

DepthFormat parse_depth_format(std::string_view text) {
  if (text == "png16") return DepthFormat::png16;
  if (text == "pfm") return DepthFormat::pfm;
  throw Error(Errc::invalid_parameter, "unknown depth format '" + std::string(text) + "' (expected png16 or pfm)");
}

DepthMap decode_depth_png16(std::span<const std::uint8_t> bytes, double divisor) {
  check_divisor(divisor);
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) throw Error(Errc::parse_error, "not a PNG stream");
  GrayPng img;
  if (const char* err = read_gray_png(bytes, img)) throw Error(Errc::parse_error, err);
  std::vector<float> values(static_cast<std::size_t>(img.width) * img.height);
  std::vector<std::uint8_t> valid(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const unsigned v =
        img.bit_depth == 16 ? (static_cast<unsigned>(img.buf[2 * i]) << 8) | img.buf[2 * i + 1] : img.buf[i];
    values[i] = static_cast<float>(v / divisor);
    valid[i] = v != 0;
  }
  return DepthMap(static_cast<int>(img.width), static_cast<int>(img.height), std::move(values), std::move(valid));
}

std::vector<std::uint8_t> encode_depth_png16(const DepthMap& depth, double divisor) {
  check_divisor(divisor);
  const int w = depth.width(), h = depth.height();
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(w) * h * 2);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      long v = 0;
      if (depth.valid(x, y)) {
        v = std::lround(static_cast<double>(depth.value(x, y)) * divisor);
        if (v < 0 || v > 65535) {
          throw Error(Errc::invalid_parameter, "depth " + std::to_string(depth.value(x, y)) +
                                                   " does not fit a 16-bit PNG at divisor " + std::to_string(divisor));
        }
      }
      const std::size_t i = (static_cast<std::size_t>(y) * w + x) * 2;
      buf[i] = static_cast<std::uint8_t>(v >> 8);
      buf[i + 1] = static_cast<std::uint8_t>(v & 0xFF);
    }
  }
  GrayPng img;
  img.width = static_cast<png_uint_32>(w);
  img.height = static_cast<png_uint_32>(h);
  img.bit_depth = 16;
  img.buf = std::move(buf);
  std::vector<std::uint8_t> out;
  if (const char* err = write_gray_png(img, out)) throw Error(Errc::io_error, err);
  return out;
}

DepthMap decode_pfm(std::span<const std::uint8_t> bytes) {
  // Header: three whitespace-separated tokens after the magic, then one
  // whitespace byte before the raster.
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
    return std::string(reinterpret_cast<const char*>(bytes.data()) + start, pos - start);
  };
  const std::string magic = token();
  if (magic != "Pf" && magic != "PF") throw Error(Errc::parse_error, "not a PFM stream");
  const int channels = magic == "PF" ? 3 : 1;
  int w = 0, h = 0;
  double scale = 0.0;
  try {
    w = std::stoi(token());
    h = std::stoi(token());
    scale = std::stod(token());
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "malformed PFM header");
  }
  if (w < 1 || h < 1 || scale == 0.0) throw Error(Errc::parse_error, "malformed PFM header");
  ++pos;
  const bool little = scale < 0.0;
  const std::size_t need = static_cast<std::size_t>(w) * h * channels * 4;
  if (bytes.size() < pos || bytes.size() - pos < need) throw Error(Errc::parse_error, "truncated PFM raster");
  std::vector<float> values(static_cast<std::size_t>(w) * h);
  std::vector<std::uint8_t> valid(values.size());
  for (int row = 0; row < h; ++row) {
    const int y = h - 1 - row;
    for (int x = 0; x < w; ++x) {
      const std::size_t src = pos + ((static_cast<std::size_t>(row) * w + x) * channels) * 4;
      const float v = read_f32(bytes.data() + src, little);
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      values[i] = v;
      valid[i] = std::isfinite(v) && v > 0.0f;
    }
  }
  return DepthMap(w, h, std::move(values), std::move(valid));
}

std::vector<std::uint8_t> encode_pfm(const DepthMap& depth) {
  const int w = depth.width(), h = depth.height();
  const std::string header = "Pf\n" + std::to_string(w) + " " + std::to_string(h) + "\n-1.0\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + static_cast<std::size_t>(w) * h * 4);
  for (int y = h - 1; y >= 0; --y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t u = std::bit_cast<std::uint32_t>(depth.valid(x, y) ? depth.value(x, y) : 0.0f);
      if constexpr (std::endian::native != std::endian::little) u = __builtin_bswap32(u);
      for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(u >> (8 * b)));
    }
  }
  return out;
}

DepthMap read_ground_truth(const std::filesystem::path& path, DepthFormat format, double divisor) {
  const auto bytes = read_binary_file(path);
  try {
    return format == DepthFormat::png16 ? decode_depth_png16(bytes, divisor) : decode_pfm(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

DepthMap read_prediction(const std::filesystem::path& path, DepthFormat format, double divisor) {
  const DepthMap m = read_ground_truth(path, format, divisor);
  std::vector<float> values(m.values().begin(), m.values().end());
  return DepthMap(m.width(), m.height(), std::move(values),
                  std::vector<std::uint8_t>(static_cast<std::size_t>(m.width()) * m.height(), 1));
}

void write_depth(const std::filesystem::path& path, const DepthMap& depth, DepthFormat format, double divisor) {
  write_binary_file(path, format == DepthFormat::png16 ? encode_depth_png16(depth, divisor) : encode_pfm(depth));
}

}  // namespace depthbench
