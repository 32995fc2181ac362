#pragma once

// Low-level raster kernels. Each kernel exists twice: a plain serial reference
// and an OpenMP row-parallel version. Both evaluate every output sample with the
// same arithmetic in the same order, so their outputs are bit-identical; the
// test suite asserts this and bench/ compares their throughput.
//
// Borders are reflect-101 (…cb|abcd|cb…). Outputs are not clamped here.

#include <cstdint>
#include <span>

#include "depthbench/image.hpp"

namespace depthbench::kernels {

/// Reflect-101 index into [0, n). Works for arbitrarily distant offsets.
int reflect_index(int i, int n) noexcept;

/// 1-D Gaussian taps with radius ceil(3·sigma), normalised to unit sum.
std::vector<float> gaussian_taps(double sigma);

namespace serial {

void convolve(ConstRasterView src, RasterView dst, const Kernel2D& kernel);
void convolve_separable(ConstRasterView src, RasterView dst, std::span<const float> taps_x,
                        std::span<const float> taps_y);
void resize_nearest(ConstRasterView src, RasterView dst);
void resize_bilinear(ConstRasterView src, RasterView dst);
/// dst(x,y) = bilinear sample of src at (map_x(x,y), map_y(x,y)).
void remap_bilinear(ConstRasterView src, RasterView dst, const Plane& map_x, const Plane& map_y);
/// acc(x,y) += weight · src(x - dx, y - dy) with reflected borders.
void accumulate_shifted(ConstRasterView src, RasterView acc, int dx, int dy, float weight);
/// counts has channels·bins entries, channel-major; bins cover [0,1].
void histogram(ConstRasterView src, int bins, std::span<std::uint64_t> counts);

}  // namespace serial

namespace parallel {

void convolve(ConstRasterView src, RasterView dst, const Kernel2D& kernel);
void convolve_separable(ConstRasterView src, RasterView dst, std::span<const float> taps_x,
                        std::span<const float> taps_y);
void resize_nearest(ConstRasterView src, RasterView dst);
void resize_bilinear(ConstRasterView src, RasterView dst);
void remap_bilinear(ConstRasterView src, RasterView dst, const Plane& map_x, const Plane& map_y);
void accumulate_shifted(ConstRasterView src, RasterView acc, int dx, int dy, float weight);
void histogram(ConstRasterView src, int bins, std::span<std::uint64_t> counts);

}  // namespace parallel

/// Shared helpers so both variants sample identically.
namespace detail {

inline int nearest_source(int i, double scale, int n) {
  int s = static_cast<int>((i + 0.5) * scale);
  return s < n ? s : n - 1;
}

struct LinearTap {
  int i0;
  int i1;
  float frac;
};

LinearTap linear_source(int i, double scale, int n);

inline int histogram_bin(float v, int bins) {
  if (!(v > 0.0f)) return 0;
  const int b = static_cast<int>(v * static_cast<float>(bins));
  return b >= bins ? bins - 1 : b;
}

}  // namespace detail

}  // namespace depthbench::kernels
