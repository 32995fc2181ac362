#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "depthbench/image.hpp"

namespace depthbench {

struct RawImage8 {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<std::uint8_t> pixels;
};

/// Baseline JPEG (libjpeg, islow DCT, 4:2:0) of interleaved 8-bit RGB.
std::vector<std::uint8_t> encode_jpeg(std::span<const std::uint8_t> rgb, int width, int height, int quality);
/// Decodes to 8-bit RGB; grayscale sources are expanded to three channels.
RawImage8 decode_jpeg(std::span<const std::uint8_t> bytes);

/// Quantise to 8 bits, encode at quality, decode.
ImageBuffer jpeg_roundtrip(const ImageBuffer& img, int quality);

}  // namespace depthbench
