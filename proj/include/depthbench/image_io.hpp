#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "depthbench/image.hpp"
#include "depthbench/jpeg_codec.hpp"

namespace depthbench {

/// PNG or JPEG by signature. Grayscale, palette, alpha and 16-bit inputs are
/// converted to 8-bit RGB before scaling to [0,1].
ImageBuffer read_image(const std::filesystem::path& path);
ImageBuffer decode_image(std::span<const std::uint8_t> bytes);

/// 8-bit RGB PNG, written through a temporary file and renamed into place.
void write_png(const std::filesystem::path& path, const ImageBuffer& image);

std::vector<std::uint8_t> encode_png_rgb8(std::span<const std::uint8_t> rgb, int width, int height);
RawImage8 decode_png_rgb8(std::span<const std::uint8_t> bytes);

/// FNV-1a 64 over the 8-bit quantised samples (row-major RGB).
std::uint64_t content_hash(const ImageBuffer& image);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
/// Creates parent directories; replaces the target atomically.
void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// .png, .jpg, .jpeg (case-insensitive).
bool is_image_path(const std::filesystem::path& path);

/// Image files under root, as '/'-separated relative paths in byte order.
/// Throws io_error if root is not a directory.
std::vector<std::string> list_images(const std::filesystem::path& root);

}  // namespace depthbench
