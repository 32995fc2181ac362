#include "depthbench/jpeg_codec.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <jpeglib.h>

#include "depthbench/error.hpp"

namespace depthbench {

namespace {

struct ErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void on_error(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<ErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  std::longjmp(mgr->jump, 1);
}

void on_message(j_common_ptr) {}

// libjpeg reports errors by longjmp; these helpers hold no C++ objects with
// destructors across the jump.
bool encode_impl(const std::uint8_t* rgb, int width, int height, int quality, unsigned char** out,
                 unsigned long* out_size, char* message) {
  jpeg_compress_struct cinfo;
  ErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_error;
  err.base.output_message = on_message;
  if (setjmp(err.jump)) {
    std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
    jpeg_destroy_compress(&cinfo);
    return false;
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, out, out_size);
  cinfo.image_width = static_cast<JDIMENSION>(width);
  cinfo.image_height = static_cast<JDIMENSION>(height);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  const auto stride = static_cast<std::size_t>(width) * 3;
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(rgb + cinfo.next_scanline * stride);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  return true;
}

struct DecodeState {
  int width = 0;
  int height = 0;
  std::uint8_t* pixels = nullptr;  // malloc'd, owned by caller on success
};

bool decode_impl(const std::uint8_t* data, std::size_t size, DecodeState* state, char* message) {
  jpeg_decompress_struct cinfo;
  ErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = on_error;
  err.base.output_message = on_message;
  if (setjmp(err.jump)) {
    std::snprintf(message, JMSG_LENGTH_MAX, "%s", err.message);
    jpeg_destroy_decompress(&cinfo);
    std::free(state->pixels);
    state->pixels = nullptr;
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  cinfo.dct_method = JDCT_ISLOW;
  jpeg_start_decompress(&cinfo);
  state->width = static_cast<int>(cinfo.output_width);
  state->height = static_cast<int>(cinfo.output_height);
  const auto stride = static_cast<std::size_t>(state->width) * 3;
  state->pixels = static_cast<std::uint8_t*>(std::malloc(stride * state->height));
  if (state->pixels == nullptr) {
    std::snprintf(message, JMSG_LENGTH_MAX, "out of memory");
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = state->pixels + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

}  // namespace

std::vector<std::uint8_t> encode_jpeg(std::span<const std::uint8_t> rgb, int width, int height, int quality) {
  if (width < 1 || height < 1 || rgb.size() != static_cast<std::size_t>(width) * height * 3) {
    throw Error(Errc::invalid_parameter, "jpeg encode: buffer does not match dimensions");
  }
  if (quality < 1 || quality > 100) {
    throw Error(Errc::invalid_parameter, "jpeg quality must be in [1,100], got " + std::to_string(quality));
  }
  unsigned char* out = nullptr;
  unsigned long out_size = 0;
  char message[JMSG_LENGTH_MAX] = {};
  const bool ok = encode_impl(rgb.data(), width, height, quality, &out, &out_size, message);
  std::vector<std::uint8_t> bytes;
  if (ok) bytes.assign(out, out + out_size);
  std::free(out);
  if (!ok) throw Error(Errc::io_error, std::string("jpeg encode failed: ") + message);
  return bytes;
}

RawImage8 decode_jpeg(std::span<const std::uint8_t> bytes) {
  DecodeState state;
  char message[JMSG_LENGTH_MAX] = {};
  if (!decode_impl(bytes.data(), bytes.size(), &state, message)) {
    throw Error(Errc::io_error, std::string("jpeg decode failed: ") + message);
  }
  RawImage8 img;
  img.width = state.width;
  img.height = state.height;
  img.channels = 3;
  img.pixels.assign(state.pixels, state.pixels + static_cast<std::size_t>(state.width) * state.height * 3);
  std::free(state.pixels);
  return img;
}

ImageBuffer jpeg_roundtrip(const ImageBuffer& img, int quality) {
  const auto encoded = encode_jpeg(to_bytes(img), img.width(), img.height(), quality);
  const auto decoded = decode_jpeg(encoded);
  return from_bytes(decoded.pixels, decoded.width, decoded.height);
}

}  // namespace depthbench
