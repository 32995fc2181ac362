#pragma once

#include "depthbench/image.hpp"

namespace depthbench {

enum class ResizeMode { nearest, bilinear };

/// Reflect-padded 2-D convolution, output clamped to [0,1].
/// Throws invalid_kernel when the kernel exceeds 2·min(width, height).
ImageBuffer convolve(const ImageBuffer& img, const Kernel2D& kernel);

/// Separable Gaussian, radius ceil(3·sigma); sigma == 0 returns a copy.
ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma);
/// Unclamped variant for scalar fields.
Plane gaussian_blur(const Plane& field, double sigma);

/// Pixel-centre aligned resampling. Throws invalid_parameter for w or h < 1.
ImageBuffer resize(const ImageBuffer& img, int width, int height, ResizeMode mode);
Plane resize(const Plane& field, int width, int height, ResizeMode mode);

/// Bilinear warp, reflect boundary: out(x,y) = img(map_x(x,y), map_y(x,y)).
ImageBuffer remap(const ImageBuffer& img, const Plane& map_x, const Plane& map_y);

/// Per-sample PSNR in dB for [0,1] images; +inf for identical inputs.
double psnr(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace depthbench
