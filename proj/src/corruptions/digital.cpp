#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "depthbench/corruptions.hpp"
#include "depthbench/error.hpp"
#include "depthbench/imageops.hpp"
#include "depthbench/jpeg_codec.hpp"

namespace depthbench {

namespace {

// Solves the affine map taking three source points onto three destination points.
std::array<double, 6> affine_from_points(const std::array<double, 6>& src, const std::array<double, 6>& dst) {
  const double x0 = src[0], y0 = src[1], x1 = src[2], y1 = src[3], x2 = src[4], y2 = src[5];
  const double det = x0 * (y1 - y2) - y0 * (x1 - x2) + (x1 * y2 - x2 * y1);
  if (std::abs(det) < 1e-12) throw Error(Errc::invalid_parameter, "degenerate affine reference points");
  std::array<double, 6> m{};
  for (int r = 0; r < 2; ++r) {
    const double u0 = dst[r], u1 = dst[2 + r], u2 = dst[4 + r];
    m[3 * r + 0] = (u0 * (y1 - y2) - y0 * (u1 - u2) + (u1 * y2 - u2 * y1)) / det;
    m[3 * r + 1] = (x0 * (u1 - u2) - u0 * (x1 - x2) + (x1 * u2 - x2 * u1)) / det;
    m[3 * r + 2] = (x0 * (y1 * u2 - y2 * u1) - y0 * (x1 * u2 - x2 * u1) + u0 * (x1 * y2 - x2 * y1)) / det;
  }
  return m;
}

Plane displacement(int w, int h, double sigma, double alpha, DeterministicRng& rng) {
  Plane d(w, h);
  for (float& v : d.values()) v = static_cast<float>(rng.uniform(-1.0, 1.0));
  d = gaussian_blur(d, sigma);
  for (float& v : d.values()) v = static_cast<float>(v * alpha);
  return d;
}

ImageBuffer elastic(const ImageBuffer& img, const LevelParams& p, DeterministicRng& rng) {
  const double alpha = p.get("alpha");
  const double sigma = p.get("sigma");
  const double affine = p.get("affine");
  if (alpha < 0.0 || sigma < 0.0 || affine < 0.0) throw Error(Errc::invalid_parameter, "elastic parameters must be >= 0");
  const int w = img.width();
  const int h = img.height();
  // affine jitter of three reference points, scaled to the short edge
  const double cx = w / 2.0, cy = h / 2.0, sq = std::min(w, h) / 3.0;
  const double jitter = affine * std::min(w, h);
  const std::array<double, 6> ref = {cx + sq, cy + sq, cx + sq, cy - sq, cx - sq, cy - sq};
  std::array<double, 6> moved = ref;
  for (double& v : moved) v += rng.uniform(-jitter, jitter);
  // inverse direction: output pixel samples the source at A(x,y)
  const auto m = affine_from_points(moved, ref);
  const Plane dx = displacement(w, h, sigma, alpha, rng);
  const Plane dy = displacement(w, h, sigma, alpha, rng);
  Plane map_x(w, h);
  Plane map_y(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      map_x.at(x, y) = static_cast<float>(m[0] * x + m[1] * y + m[2] + dx.at(x, y));
      map_y.at(x, y) = static_cast<float>(m[3] * x + m[4] * y + m[5] + dy.at(x, y));
    }
  }
  return remap(img, map_x, map_y);
}

ImageBuffer color_quant(const ImageBuffer& img, const LevelParams& p) {
  const int bits = p.get_int("bits");
  if (bits < 1 || bits > 16) throw Error(Errc::invalid_parameter, "color_quant bits must be in [1,16]");
  const float levels = static_cast<float>((1 << bits) - 1);
  ImageBuffer out = img;
  for (float& v : out.samples()) v = static_cast<float>(std::nearbyint(std::clamp(v, 0.0f, 1.0f) * levels)) / levels;
  return out;
}

ImageBuffer pixelate(const ImageBuffer& img, const LevelParams& p) {
  const double factor = p.get("factor");
  if (!(factor > 0.0) || factor > 1.0) throw Error(Errc::invalid_parameter, "pixelate factor must be in (0,1]");
  const int w = std::max(1, static_cast<int>(img.width() * factor));
  const int h = std::max(1, static_cast<int>(img.height() * factor));
  return resize(resize(img, w, h, ResizeMode::nearest), img.width(), img.height(), ResizeMode::nearest);
}

}  // namespace

ImageBuffer apply_digital(const ImageBuffer& img, DigitalModel model, const LevelParams& p, DeterministicRng& rng) {
  switch (model) {
    case DigitalModel::elastic:
      return elastic(img, p, rng);
    case DigitalModel::color_quant:
      return color_quant(img, p);
    case DigitalModel::pixelate:
      return pixelate(img, p);
    case DigitalModel::jpeg:
      return jpeg_roundtrip(img, p.get_int("quality"));
  }
  throw Error(Errc::unsupported_kind, "unknown digital model " + std::to_string(static_cast<int>(model)));
}

}  // namespace depthbench
