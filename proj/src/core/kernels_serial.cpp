#include <algorithm>
#include <cmath>

#include "depthbench/kernels.hpp"

namespace depthbench::kernels {

int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

std::vector<float> gaussian_taps(double sigma) {
  if (sigma <= 0.0) return {1.0f};
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  double total = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    w[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    total += w[i + radius];
  }
  std::vector<float> taps(w.size());
  std::transform(w.begin(), w.end(), taps.begin(), [total](double v) { return static_cast<float>(v / total); });
  return taps;
}

namespace detail {

LinearTap linear_source(int i, double scale, int n) {
  double s = (i + 0.5) * scale - 0.5;
  s = std::clamp(s, 0.0, static_cast<double>(n - 1));
  const int i0 = static_cast<int>(s);
  const int i1 = std::min(i0 + 1, n - 1);
  return {i0, i1, static_cast<float>(s - i0)};
}

}  // namespace detail

namespace serial {

void convolve(ConstRasterView src, RasterView dst, const Kernel2D& kernel) {
  const int r = kernel.radius();
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < src.channels; ++c) {
        double acc = 0.0;
        for (int ky = -r; ky <= r; ++ky) {
          const int sy = reflect_index(y + ky, src.height);
          for (int kx = -r; kx <= r; ++kx) {
            const int sx = reflect_index(x + kx, src.width);
            acc += static_cast<double>(kernel.at(kx, ky)) * src.row(sy)[sx * src.channels + c];
          }
        }
        dst.row(y)[x * dst.channels + c] = static_cast<float>(acc);
      }
    }
  }
}

void convolve_separable(ConstRasterView src, RasterView dst, std::span<const float> taps_x,
                        std::span<const float> taps_y) {
  const int rx = static_cast<int>(taps_x.size() / 2);
  const int ry = static_cast<int>(taps_y.size() / 2);
  const int ch = src.channels;
  std::vector<float> tmp(src.size());
  for (int y = 0; y < src.height; ++y) {
    const float* in = src.row(y);
    float* out = tmp.data() + static_cast<std::size_t>(y) * src.width * ch;
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = -rx; k <= rx; ++k) {
          acc += static_cast<double>(taps_x[k + rx]) * in[reflect_index(x + k, src.width) * ch + c];
        }
        out[x * ch + c] = static_cast<float>(acc);
      }
    }
  }
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int k = -ry; k <= ry; ++k) {
          const int sy = reflect_index(y + k, src.height);
          acc += static_cast<double>(taps_y[k + ry]) * tmp[(static_cast<std::size_t>(sy) * src.width + x) * ch + c];
        }
        dst.row(y)[x * ch + c] = static_cast<float>(acc);
      }
    }
  }
}

void resize_nearest(ConstRasterView src, RasterView dst) {
  const double sx = static_cast<double>(src.width) / dst.width;
  const double sy = static_cast<double>(src.height) / dst.height;
  for (int y = 0; y < dst.height; ++y) {
    const float* in = src.row(detail::nearest_source(y, sy, src.height));
    for (int x = 0; x < dst.width; ++x) {
      const int xs = detail::nearest_source(x, sx, src.width);
      for (int c = 0; c < src.channels; ++c) dst.row(y)[x * dst.channels + c] = in[xs * src.channels + c];
    }
  }
}

void resize_bilinear(ConstRasterView src, RasterView dst) {
  const double sx = static_cast<double>(src.width) / dst.width;
  const double sy = static_cast<double>(src.height) / dst.height;
  const int ch = src.channels;
  for (int y = 0; y < dst.height; ++y) {
    const auto ty = detail::linear_source(y, sy, src.height);
    const float* r0 = src.row(ty.i0);
    const float* r1 = src.row(ty.i1);
    for (int x = 0; x < dst.width; ++x) {
      const auto tx = detail::linear_source(x, sx, src.width);
      for (int c = 0; c < ch; ++c) {
        const float top = r0[tx.i0 * ch + c] + (r0[tx.i1 * ch + c] - r0[tx.i0 * ch + c]) * tx.frac;
        const float bot = r1[tx.i0 * ch + c] + (r1[tx.i1 * ch + c] - r1[tx.i0 * ch + c]) * tx.frac;
        dst.row(y)[x * ch + c] = top + (bot - top) * ty.frac;
      }
    }
  }
}

void remap_bilinear(ConstRasterView src, RasterView dst, const Plane& map_x, const Plane& map_y) {
  const int ch = src.channels;
  for (int y = 0; y < dst.height; ++y) {
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
        dst.row(y)[x * ch + c] = top + (bot - top) * ay;
      }
    }
  }
}

void accumulate_shifted(ConstRasterView src, RasterView acc, int dx, int dy, float weight) {
  const int ch = src.channels;
  for (int y = 0; y < acc.height; ++y) {
    const float* in = src.row(reflect_index(y - dy, src.height));
    float* out = acc.row(y);
    for (int x = 0; x < acc.width; ++x) {
      const int xs = reflect_index(x - dx, src.width);
      for (int c = 0; c < ch; ++c) out[x * ch + c] += weight * in[xs * ch + c];
    }
  }
}

void histogram(ConstRasterView src, int bins, std::span<std::uint64_t> counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const std::size_t n = src.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % src.channels);
    ++counts[static_cast<std::size_t>(c) * bins + detail::histogram_bin(src.data[i], bins)];
  }
}

}  // namespace serial
}  // namespace depthbench::kernels
