#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "depthbench/corruptions.hpp"
#include "depthbench/error.hpp"
#include "depthbench/imageops.hpp"
#include "depthbench/kernels.hpp"

namespace depthbench {

namespace {

template <typename Raster>
Raster crop(const Raster& src, int left, int top, int width, int height) {
  Raster out(width, height);
  const auto in = src.view();
  auto dst = out.view();
  const auto row_len = static_cast<std::size_t>(width) * in.channels;
  for (int y = 0; y < height; ++y) {
    std::copy_n(in.row(top + y) + static_cast<std::size_t>(left) * in.channels, row_len, dst.row(y));
  }
  return out;
}

template <typename Raster>
Raster clipped_zoom_impl(const Raster& src, double zoom) {
  if (!(zoom >= 1.0)) throw Error(Errc::invalid_parameter, "zoom factor must be >= 1");
  const int h = src.height();
  const int w = src.width();
  const int ch = std::max(1, static_cast<int>(std::ceil(h / zoom - 1e-9)));
  const int cw = std::max(1, static_cast<int>(std::ceil(w / zoom - 1e-9)));
  const Raster centre = crop(src, (w - cw) / 2, (h - ch) / 2, cw, ch);
  const int zh = std::max(h, static_cast<int>(std::lround(ch * zoom)));
  const int zw = std::max(w, static_cast<int>(std::lround(cw * zoom)));
  const Raster zoomed = resize(centre, zw, zh, ResizeMode::bilinear);
  return crop(zoomed, (zw - w) / 2, (zh - h) / 2, w, h);
}

std::vector<float> motion_weights(int radius, double sigma) {
  if (radius < 0) throw Error(Errc::invalid_parameter, "motion radius must be non-negative");
  if (!(sigma > 0.0)) throw Error(Errc::invalid_parameter, "motion sigma must be positive");
  const int width = 2 * radius + 1;
  std::vector<double> w(width);
  double total = 0.0;
  for (int i = 0; i < width; ++i) {
    w[i] = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
    total += w[i];
  }
  std::vector<float> out(width);
  for (int i = 0; i < width; ++i) out[i] = static_cast<float>(w[i] / total);
  return out;
}

template <typename Raster>
Raster motion_blur_impl(const Raster& src, int radius, double sigma, double angle_deg) {
  const auto weights = motion_weights(radius, sigma);
  const double a = angle_deg * std::numbers::pi / 180.0;
  const double sin_a = std::sin(a);
  const double cos_a = std::cos(a);
  Raster acc(src.width(), src.height());
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    const int dy = -static_cast<int>(std::ceil(i * sin_a - 0.5));
    const int dx = -static_cast<int>(std::ceil(i * cos_a - 0.5));
    kernels::parallel::accumulate_shifted(src.view(), acc.view(), dx, dy, weights[i]);
  }
  return acc;
}

ImageBuffer glass(const ImageBuffer& img, const LevelParams& p, DeterministicRng& rng) {
  const double sigma = p.get("sigma");
  const int delta = p.get_int("delta");
  const int iterations = p.get_int("iterations");
  if (delta < 0 || iterations < 0) throw Error(Errc::invalid_parameter, "glass delta and iterations must be >= 0");
  ImageBuffer x = gaussian_blur(img, sigma);
  // the reference truncates to 8 bits between the two blurs
  for (float& v : x.samples()) v = std::floor(v * 255.0f) / 255.0f;
  const int H = x.height();
  const int W = x.width();
  for (int it = 0; delta > 0 && it < iterations; ++it) {
    for (int h = H - delta; h > delta; --h) {
      for (int w = W - delta; w > delta; --w) {
        const int dx = rng.uniform_int(-delta, delta - 1);
        const int dy = rng.uniform_int(-delta, delta - 1);
        const int hp = h + dy;
        const int wp = w + dx;
        for (int c = 0; c < 3; ++c) std::swap(x.at(w, h, c), x.at(wp, hp, c));
      }
    }
  }
  return gaussian_blur(x, sigma);
}

ImageBuffer zoom(const ImageBuffer& img, const LevelParams& p) {
  const double z_max = p.get("z_max");
  const double step = p.get("step");
  if (!(z_max >= 1.0)) throw Error(Errc::invalid_parameter, "zoom z_max must be >= 1");
  if (!(step > 0.0)) throw Error(Errc::invalid_parameter, "zoom step must be positive");
  const int n = static_cast<int>(std::lround((z_max - 1.0) / step));
  std::vector<double> acc(img.samples().begin(), img.samples().end());
  for (int k = 0; k <= n; ++k) {
    const ImageBuffer z = clipped_zoom(img, 1.0 + k * step);
    const auto s = z.samples();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
  }
  ImageBuffer out(img.width(), img.height());
  auto o = out.samples();
  const double denom = n + 2.0;
  for (std::size_t i = 0; i < acc.size(); ++i) o[i] = static_cast<float>(acc[i] / denom);
  out.clamp01();
  return out;
}

}  // namespace

ImageBuffer clipped_zoom(const ImageBuffer& img, double zoom) { return clipped_zoom_impl(img, zoom); }
Plane clipped_zoom(const Plane& field, double zoom) { return clipped_zoom_impl(field, zoom); }

ImageBuffer motion_blur_raw(const ImageBuffer& img, int radius, double sigma, double angle_deg) {
  return motion_blur_impl(img, radius, sigma, angle_deg);
}

Plane motion_blur_raw(const Plane& field, int radius, double sigma, double angle_deg) {
  return motion_blur_impl(field, radius, sigma, angle_deg);
}

Kernel2D defocus_kernel(double radius, double alias_sigma) {
  if (!(radius >= 0.0)) throw Error(Errc::invalid_parameter, "defocus radius must be non-negative");
  if (!(alias_sigma >= 0.0)) throw Error(Errc::invalid_parameter, "defocus alias sigma must be non-negative");
  const Kernel2D disk = Kernel2D::disk(radius);
  if (alias_sigma == 0.0) return disk;
  // fixed smoothing window as in the reference: 3 taps up to radius 8, 5 above
  const int half = radius <= 8.0 ? 1 : 2;
  std::vector<double> taps(2 * half + 1);
  double tsum = 0.0;
  for (int i = -half; i <= half; ++i) {
    taps[i + half] = std::exp(-(i * i) / (2.0 * alias_sigma * alias_sigma));
    tsum += taps[i + half];
  }
  for (double& t : taps) t /= tsum;
  const int n = disk.size() + 2 * half;
  const int r = n / 2;
  std::vector<double> padded(static_cast<std::size_t>(n) * n, 0.0);
  for (int dy = -disk.radius(); dy <= disk.radius(); ++dy) {
    for (int dx = -disk.radius(); dx <= disk.radius(); ++dx) {
      padded[static_cast<std::size_t>(dy + r) * n + (dx + r)] = disk.at(dx, dy);
    }
  }
  std::vector<double> tmp(padded.size(), 0.0);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        if (x + k >= 0 && x + k < n) acc += taps[k + half] * padded[static_cast<std::size_t>(y) * n + x + k];
      }
      tmp[static_cast<std::size_t>(y) * n + x] = acc;
    }
  }
  std::vector<float> weights(padded.size());
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      double acc = 0.0;
      for (int k = -half; k <= half; ++k) {
        if (y + k >= 0 && y + k < n) acc += taps[k + half] * tmp[static_cast<std::size_t>(y + k) * n + x];
      }
      weights[static_cast<std::size_t>(y) * n + x] = static_cast<float>(acc);
    }
  }
  Kernel2D k(n, std::move(weights));
  k.normalize();
  return k;
}

ImageBuffer apply_blur(const ImageBuffer& img, BlurModel model, const LevelParams& p, DeterministicRng& rng) {
  switch (model) {
    case BlurModel::defocus:
      return convolve(img, defocus_kernel(p.get("radius"), p.get("alias_sigma")));
    case BlurModel::glass:
      return glass(img, p, rng);
    case BlurModel::motion: {
      const double angle = rng.uniform(-45.0, 45.0);
      ImageBuffer out = motion_blur_raw(img, p.get_int("radius"), p.get("sigma"), angle);
      out.clamp01();
      return out;
    }
    case BlurModel::zoom:
      return zoom(img, p);
  }
  throw Error(Errc::unsupported_kind, "unknown blur model " + std::to_string(static_cast<int>(model)));
}

}  // namespace depthbench
