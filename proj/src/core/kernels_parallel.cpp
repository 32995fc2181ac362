#include <algorithm>
#include <cmath>
#include <vector>

#include "depthbench/kernels.hpp"

namespace depthbench::kernels::parallel {

namespace {

std::vector<int> reflect_table(int lo, int hi, int n) {
  std::vector<int> t(static_cast<std::size_t>(hi - lo));
  for (int i = lo; i < hi; ++i) t[i - lo] = reflect_index(i, n);
  return t;
}

}  // namespace

void convolve(ConstRasterView src, RasterView dst, const Kernel2D& kernel) {
  const int r = kernel.radius();
  const int ch = src.channels;
  // xs[x + r + k] = reflected column for offset k
  const auto xs = reflect_table(-r, src.width + r, src.width);
  const auto ys = reflect_table(-r, src.height + r, src.height);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height; ++y) {
    float* out = dst.row(y);
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int ky = -r; ky <= r; ++ky) {
          const float* in = src.row(ys[y + ky + r]);
          for (int kx = -r; kx <= r; ++kx) {
            acc += static_cast<double>(kernel.at(kx, ky)) * in[xs[x + kx + r] * ch + c];
          }
        }
        out[x * ch + c] = static_cast<float>(acc);
      }
    }
  }
}

void convolve_separable(ConstRasterView src, RasterView dst, std::span<const float> taps_x,
                        std::span<const float> taps_y) {
  const int rx = static_cast<int>(taps_x.size() / 2);
  const int ry = static_cast<int>(taps_y.size() / 2);
  const int ch = src.channels;
  const auto xs = reflect_table(-rx, src.width + rx, src.width);
  const auto ys = reflect_table(-ry, src.height + ry, src.height);
  std::vector<float> tmp(src.size());
  const std::size_t stride = static_cast<std::size_t>(src.width) * ch;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height; ++y) {
    const float* in = src.row(y);
    float* out = tmp.data() + static_cast<std::size_t>(y) * stride;
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = -rx; k <= rx; ++k) acc += static_cast<double>(taps_x[k + rx]) * in[xs[x + k + rx] * ch + c];
        out[x * ch + c] = static_cast<float>(acc);
      }
    }
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < src.height; ++y) {
    float* out = dst.row(y);
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = -ry; k <= ry; ++k) {
          acc += static_cast<double>(taps_y[k + ry]) * tmp[ys[y + k + ry] * stride + x * ch + c];
        }
        out[x * ch + c] = static_cast<float>(acc);
      }
    }
  }
}

void resize_nearest(ConstRasterView src, RasterView dst) {
  const double sx = static_cast<double>(src.width) / dst.width;
  const double sy = static_cast<double>(src.height) / dst.height;
  std::vector<int> xs(dst.width);
  for (int x = 0; x < dst.width; ++x) xs[x] = detail::nearest_source(x, sx, src.width);
  const int ch = src.channels;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dst.height; ++y) {
    const float* in = src.row(detail::nearest_source(y, sy, src.height));
    float* out = dst.row(y);
    for (int x = 0; x < dst.width; ++x) {
      for (int c = 0; c < ch; ++c) out[x * ch + c] = in[xs[x] * ch + c];
    }
  }
}

void resize_bilinear(ConstRasterView src, RasterView dst) {
  const double sx = static_cast<double>(src.width) / dst.width;
  const double sy = static_cast<double>(src.height) / dst.height;
  const int ch = src.channels;
  std::vector<detail::LinearTap> tx(dst.width);
  for (int x = 0; x < dst.width; ++x) tx[x] = detail::linear_source(x, sx, src.width);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dst.height; ++y) {
    const auto ty = detail::linear_source(y, sy, src.height);
    const float* r0 = src.row(ty.i0);
    const float* r1 = src.row(ty.i1);
    float* out = dst.row(y);
    for (int x = 0; x < dst.width; ++x) {
      const auto& t = tx[x];
      for (int c = 0; c < ch; ++c) {
        const float top = r0[t.i0 * ch + c] + (r0[t.i1 * ch + c] - r0[t.i0 * ch + c]) * t.frac;
        const float bot = r1[t.i0 * ch + c] + (r1[t.i1 * ch + c] - r1[t.i0 * ch + c]) * t.frac;
        out[x * ch + c] = top + (bot - top) * ty.frac;
      }
    }
  }
}

void remap_bilinear(ConstRasterView src, RasterView dst, const Plane& map_x, const Plane& map_y) {
  const int ch = src.channels;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < dst.height; ++y) {
    float* out = dst.row(y);
    for (int x = 0; x < dst.width; ++x) {
      const float fx = map_x.at(x, y);
      const float fy = map_y.at(x, y);
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const float ax = fx - static_cast<float>(x0);
      const float ay = fy - static_cast<float>(y0);
      const int xa = reflect_index(x0, src.width);
      const int xb = reflect_index(x0 + 1, src.width);
      const float* r0 = src.row(reflect_index(y0, src.height));
      const float* r1 = src.row(reflect_index(y0 + 1, src.height));
      for (int c = 0; c < ch; ++c) {
        const float top = r0[xa * ch + c] + (r0[xb * ch + c] - r0[xa * ch + c]) * ax;
        const float bot = r1[xa * ch + c] + (r1[xb * ch + c] - r1[xa * ch + c]) * ax;
        out[x * ch + c] = top + (bot - top) * ay;
      }
    }
  }
}

void accumulate_shifted(ConstRasterView src, RasterView acc, int dx, int dy, float weight) {
  const int ch = src.channels;
  std::vector<int> xs(acc.width);
  for (int x = 0; x < acc.width; ++x) xs[x] = reflect_index(x - dx, src.width);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < acc.height; ++y) {
    const float* in = src.row(reflect_index(y - dy, src.height));
    float* out = acc.row(y);
    for (int x = 0; x < acc.width; ++x) {
      for (int c = 0; c < ch; ++c) out[x * ch + c] += weight * in[xs[x] * ch + c];
    }
  }
}

void histogram(ConstRasterView src, int bins, std::span<std::uint64_t> counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const int ch = src.channels;
  const std::size_t total = counts.size();
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(total, 0);
#pragma omp for schedule(static) nowait
    for (int y = 0; y < src.height; ++y) {
      const float* in = src.row(y);
      for (int x = 0; x < src.width; ++x) {
        for (int c = 0; c < ch; ++c) ++local[static_cast<std::size_t>(c) * bins + detail::histogram_bin(in[x * ch + c], bins)];
      }
    }
#pragma omp critical
    for (std::size_t i = 0; i < total; ++i) counts[i] += local[i];
  }
}

}  // namespace depthbench::kernels::parallel
