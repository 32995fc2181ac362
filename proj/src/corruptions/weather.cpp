#include <algorithm>
#include <cmath>
#include <string>

#include "depthbench/color.hpp"
#include "depthbench/corruptions.hpp"
#include "depthbench/error.hpp"
#include "depthbench/plasma.hpp"

namespace depthbench {

namespace {

ImageBuffer fog(const ImageBuffer& img, const LevelParams& p, DeterministicRng& rng) {
  const double t = p.get("intensity");
  const double decay = p.get("wibbledecay");
  if (t < 0.0) throw Error(Errc::invalid_parameter, "fog intensity must be non-negative");
  if (t == 0.0) return img;
  // as in the reference toolkit: square field, top-left frame-sized window
  const int size = plasma_size_for(std::max(img.width(), img.height()));
  const Plane field = plasma_fractal(size, decay, rng);
  const auto src = img.samples();
  const double max_c = src.empty() ? 0.0 : *std::max_element(src.begin(), src.end());
  const double gain = max_c / (max_c + t);
  ImageBuffer out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double f = field.at(x, y);
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<float>((img.at(x, y, c) + t * f) * gain);
    }
  }
  out.clamp01();
  return out;
}

ImageBuffer frost(const ImageBuffer& img, const LevelParams& p, DeterministicRng& rng, const FrostSource* source) {
  const double b = p.get("image_weight");
  const double f = p.get("frost_weight");
  if (source == nullptr) source = &ProceduralFrost::instance();
  if (source->variant_count() == 0) throw Error(Errc::missing_asset, "frost asset set is empty");
  const auto variant = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(source->variant_count()) - 1));
  const auto tex = source->texture(variant, img.width(), img.height());
  if (tex->width() < img.width() || tex->height() < img.height()) {
    throw Error(Errc::missing_asset, "frost texture smaller than the frame");
  }
  const int x0 = rng.uniform_int(0, tex->width() - img.width());
  const int y0 = rng.uniform_int(0, tex->height() - img.height());
  ImageBuffer out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = static_cast<float>(b * img.at(x, y, c) + f * tex->at(x0 + x, y0 + y, c));
      }
    }
  }
  out.clamp01();
  return out;
}

ImageBuffer snow(const ImageBuffer& img, const LevelParams& p, DeterministicRng& rng) {
  const double mean = p.get("mean");
  const double sd = p.get("std");
  const double zoom = p.get("zoom");
  const double threshold = p.get("threshold");
  const int blur_radius = p.get_int("blur_radius");
  const double blur_sigma = p.get("blur_sigma");
  const double weight = p.get("image_weight");
  const int w = img.width();
  const int h = img.height();

  Plane layer(w, h);
  for (float& v : layer.values()) v = static_cast<float>(rng.normal(mean, sd));
  layer = clipped_zoom(layer, zoom);
  for (float& v : layer.values()) v = v < threshold ? 0.0f : std::min(v, 1.0f);
  const double angle = rng.uniform(-135.0, -45.0);
  layer = motion_blur_raw(layer, blur_radius, blur_sigma, angle);
  for (float& v : layer.values()) v = static_cast<float>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f)) / 255.0f;

  ImageBuffer out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float r = img.at(x, y, 0);
      const float g = img.at(x, y, 1);
      const float b = img.at(x, y, 2);
      const double whitened = luma(r, g, b) * 1.5 + 0.5;
      const double flakes = static_cast<double>(layer.at(x, y)) + layer.at(w - 1 - x, h - 1 - y);
      for (int c = 0; c < 3; ++c) {
        const double v = img.at(x, y, c);
        out.at(x, y, c) = static_cast<float>(weight * v + (1.0 - weight) * std::max(v, whitened) + flakes);
      }
    }
  }
  out.clamp01();
  return out;
}

}  // namespace

ImageBuffer apply_weather(const ImageBuffer& img, WeatherModel model, const LevelParams& p, DeterministicRng& rng,
                          const FrostSource* frost_source) {
  switch (model) {
    case WeatherModel::fog:
      return fog(img, p, rng);
    case WeatherModel::frost:
      return frost(img, p, rng, frost_source);
    case WeatherModel::snow:
      return snow(img, p, rng);
  }
  throw Error(Errc::unsupported_kind, "unknown weather model " + std::to_string(static_cast<int>(model)));
}

}  // namespace depthbench
