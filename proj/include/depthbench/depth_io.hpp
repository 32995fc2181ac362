#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "depthbench/depth_metrics.hpp"

namespace depthbench {

enum class DepthFormat : std::uint8_t { png16, pfm };

std::string_view name(DepthFormat format);
/// "png16" or "pfm"; throws invalid_parameter.
DepthFormat parse_depth_format(std::string_view text);
/// File extension including the dot.
std::string_view extension(DepthFormat format);

/// 16-bit grayscale PNG, metres = value / divisor, zero marks an invalid pixel.
/// 8-bit grayscale files are accepted as well.
DepthMap decode_depth_png16(std::span<const std::uint8_t> bytes, double divisor);
/// Invalid pixels are written as 0. Values must fit in [0, 65535/divisor].
std::vector<std::uint8_t> encode_depth_png16(const DepthMap& depth, double divisor);

/// Portable float map. "Pf" (one channel) or "PF" (first channel is used);
/// a negative scale marks little-endian data; rows are stored bottom-up.
/// Every finite positive sample is valid.
DepthMap decode_pfm(std::span<const std::uint8_t> bytes);
/// Little-endian "Pf"; invalid pixels are written as 0.
std::vector<std::uint8_t> encode_pfm(const DepthMap& depth);

/// Ground truth: validity comes from the file (zero / non-positive = invalid).
DepthMap read_ground_truth(const std::filesystem::path& path, DepthFormat format, double divisor);
/// Predictions are dense: every pixel is marked valid so that holes surface
/// as invalid_depth during scoring instead of silently shrinking the set.
DepthMap read_prediction(const std::filesystem::path& path, DepthFormat format, double divisor);

void write_depth(const std::filesystem::path& path, const DepthMap& depth, DepthFormat format, double divisor);

}  // namespace depthbench
