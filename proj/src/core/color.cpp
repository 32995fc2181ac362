#include "depthbench/color.hpp"

#include <algorithm>
#include <cmath>

namespace depthbench {

std::array<float, 3> rgb_to_hsv(float r, float g, float b) noexcept {
  const double R = r, G = g, B = b;
  const double v = std::max({R, G, B});
  const double delta = v - std::min({R, G, B});
  if (delta <= 0.0) return {0.0f, 0.0f, static_cast<float>(v)};
  const double s = delta / v;
  double h;
  if (R == v) {
    h = (G - B) / delta;
  } else if (G == v) {
    h = 2.0 + (B - R) / delta;
  } else {
    h = 4.0 + (R - G) / delta;
  }
  h /= 6.0;
  if (h < 0.0) h += 1.0;
  if (h >= 1.0) h -= 1.0;
  return {static_cast<float>(h), static_cast<float>(s), static_cast<float>(v)};
}

std::array<float, 3> hsv_to_rgb(float h, float s, float v) noexcept {
  const double H = static_cast<double>(h) * 6.0;
  const double V = v, S = s;
  const double fi = std::floor(H);
  const double f = H - fi;
  const int i = static_cast<int>(fi) % 6;
  const double p = V * (1.0 - S);
  const double q = V * (1.0 - S * f);
  const double t = V * (1.0 - S * (1.0 - f));
  double r, g, b;
  switch (i < 0 ? i + 6 : i) {
    case 0: r = V; g = t; b = p; break;
    case 1: r = q; g = V; b = p; break;
    case 2: r = p; g = V; b = t; break;
    case 3: r = p; g = q; b = V; break;
    case 4: r = t; g = p; b = V; break;
    default: r = V; g = p; b = q; break;
  }
  return {static_cast<float>(r), static_cast<float>(g), static_cast<float>(b)};
}

namespace {

template <typename F>
ImageBuffer map_pixels(const ImageBuffer& in, F f) {
  ImageBuffer out(in.width(), in.height());
  const auto src = in.samples();
  auto dst = out.samples();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    const auto px = f(src[i], src[i + 1], src[i + 2]);
    dst[i] = px[0];
    dst[i + 1] = px[1];
    dst[i + 2] = px[2];
  }
  return out;
}

}  // namespace

ImageBuffer rgb_to_hsv(const ImageBuffer& rgb) {
  return map_pixels(rgb, [](float r, float g, float b) { return rgb_to_hsv(r, g, b); });
}

ImageBuffer hsv_to_rgb(const ImageBuffer& hsv) {
  return map_pixels(hsv, [](float h, float s, float v) { return hsv_to_rgb(h, s, v); });
}

std::array<float, 3> rgb_to_ycbcr(float r, float g, float b) noexcept {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  const double cb = (b - y) * (0.5 / (1.0 - 0.114));
  const double cr = (r - y) * (0.5 / (1.0 - 0.299));
  return {static_cast<float>(y), static_cast<float>(cb), static_cast<float>(cr)};
}

std::array<float, 3> ycbcr_to_rgb(float y, float cb, float cr) noexcept {
  const double r = y + cr * (2.0 * (1.0 - 0.299));
  const double b = y + cb * (2.0 * (1.0 - 0.114));
  const double g = (y - 0.299 * r - 0.114 * b) / 0.587;
  return {static_cast<float>(r), static_cast<float>(g), static_cast<float>(b)};
}

float luma(float r, float g, float b) noexcept {
  return static_cast<float>(0.299 * r + 0.587 * g + 0.114 * b);
}

double mean_luma(const ImageBuffer& img) noexcept {
  const auto s = img.samples();
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); i += 3) total += luma(s[i], s[i + 1], s[i + 2]);
  return img.pixel_count() ? total / static_cast<double>(img.pixel_count()) : 0.0;
}

}  // namespace depthbench
