#include "depthbench/imageops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "depthbench/error.hpp"
#include "depthbench/kernels.hpp"

namespace depthbench {

namespace {

void check_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_parameter, "gaussian sigma must be finite and non-negative, got " + std::to_string(sigma));
  }
}

void check_size(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(Errc::invalid_parameter,
                "resize target must be at least 1x1, got " + std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

ImageBuffer convolve(const ImageBuffer& img, const Kernel2D& kernel) {
  if (kernel.size() > 2 * std::min(img.width(), img.height())) {
    throw Error(Errc::invalid_kernel, "kernel of size " + std::to_string(kernel.size()) + " is too large for a " +
                                          std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image");
  }
  ImageBuffer out(img.width(), img.height());
  kernels::parallel::convolve(img.view(), out.view(), kernel);
  out.clamp01();
  return out;
}

ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma) {
  check_sigma(sigma);
  if (sigma == 0.0) return img;
  const auto taps = kernels::gaussian_taps(sigma);
  ImageBuffer out(img.width(), img.height());
  kernels::parallel::convolve_separable(img.view(), out.view(), taps, taps);
  out.clamp01();
  return out;
}

Plane gaussian_blur(const Plane& field, double sigma) {
  check_sigma(sigma);
  if (sigma == 0.0) return field;
  const auto taps = kernels::gaussian_taps(sigma);
  Plane out(field.width(), field.height());
  kernels::parallel::convolve_separable(field.view(), out.view(), taps, taps);
  return out;
}

ImageBuffer resize(const ImageBuffer& img, int width, int height, ResizeMode mode) {
  check_size(width, height);
  ImageBuffer out(width, height);
  if (mode == ResizeMode::nearest) {
    kernels::parallel::resize_nearest(img.view(), out.view());
  } else {
    kernels::parallel::resize_bilinear(img.view(), out.view());
  }
  return out;
}

Plane resize(const Plane& field, int width, int height, ResizeMode mode) {
  check_size(width, height);
  Plane out(width, height);
  if (mode == ResizeMode::nearest) {
    kernels::parallel::resize_nearest(field.view(), out.view());
  } else {
    kernels::parallel::resize_bilinear(field.view(), out.view());
  }
  return out;
}

ImageBuffer remap(const ImageBuffer& img, const Plane& map_x, const Plane& map_y) {
  if (map_x.width() != map_y.width() || map_x.height() != map_y.height()) {
    throw Error(Errc::shape_mismatch, "remap coordinate planes differ in size");
  }
  ImageBuffer out(map_x.width(), map_x.height());
  kernels::parallel::remap_bilinear(img.view(), out.view(), map_x, map_y);
  out.clamp01();
  return out;
}

double psnr(const ImageBuffer& a, const ImageBuffer& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(Errc::shape_mismatch, "psnr operands differ in size");
  }
  const auto x = a.samples();
  const auto y = b.samples();
  double se = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i]) - y[i];
    se += d * d;
  }
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(static_cast<double>(x.size()) / se);
}

}  // namespace depthbench
