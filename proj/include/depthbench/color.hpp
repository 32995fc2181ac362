#pragma once

#include <array>

#include "depthbench/image.hpp"

namespace depthbench {

/// HSV with every component in [0,1]; hue wraps at 1 (0 = red).
std::array<float, 3> rgb_to_hsv(float r, float g, float b) noexcept;
std::array<float, 3> hsv_to_rgb(float h, float s, float v) noexcept;

/// Whole-image conversions; the HSV image stores (h,s,v) in the three channels.
ImageBuffer rgb_to_hsv(const ImageBuffer& rgb);
ImageBuffer hsv_to_rgb(const ImageBuffer& hsv);

/// BT.601 full-range luma/chroma. Cb and Cr are centred on 0, range [-0.5,0.5].
std::array<float, 3> rgb_to_ycbcr(float r, float g, float b) noexcept;
std::array<float, 3> ycbcr_to_rgb(float y, float cb, float cr) noexcept;

float luma(float r, float g, float b) noexcept;
/// Mean BT.601 luma over the image.
double mean_luma(const ImageBuffer& img) noexcept;

}  // namespace depthbench
