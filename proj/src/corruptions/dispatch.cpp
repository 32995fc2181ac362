#include <string>

#include "depthbench/corruptions.hpp"
#include "depthbench/error.hpp"

namespace depthbench {

ImageBuffer apply_corruption(const ImageBuffer& img, const CorruptionSpec& spec, const SeverityTable& table,
                             const FrostSource* frost) {
  if (static_cast<int>(spec.kind) >= kKindCount) {
    throw Error(Errc::unsupported_kind, "unknown corruption kind id " + std::to_string(static_cast<int>(spec.kind)));
  }
  if (img.width() < kMinCorruptionEdge || img.height() < kMinCorruptionEdge) {
    throw Error(Errc::invalid_parameter, "image must be at least 8x8 to corrupt, got " + std::to_string(img.width()) +
                                             "x" + std::to_string(img.height()));
  }
  const LevelParams& p = table.params(spec.kind, spec.severity);
  DeterministicRng rng(spec.seed);
  using K = CorruptionKind;
  switch (spec.kind) {
    case K::gaussian_noise: return apply_noise(img, NoiseModel::gaussian, p, rng);
    case K::shot_noise: return apply_noise(img, NoiseModel::shot, p, rng);
    case K::impulse_noise: return apply_noise(img, NoiseModel::impulse, p, rng);
    case K::iso_noise: return apply_noise(img, NoiseModel::iso, p, rng);
    case K::defocus_blur: return apply_blur(img, BlurModel::defocus, p, rng);
    case K::glass_blur: return apply_blur(img, BlurModel::glass, p, rng);
    case K::motion_blur: return apply_blur(img, BlurModel::motion, p, rng);
    case K::zoom_blur: return apply_blur(img, BlurModel::zoom, p, rng);
    case K::fog: return apply_weather(img, WeatherModel::fog, p, rng, frost);
    case K::frost: return apply_weather(img, WeatherModel::frost, p, rng, frost);
    case K::snow: return apply_weather(img, WeatherModel::snow, p, rng, frost);
    case K::brightness: return apply_tone(img, ToneModel::brightness, p, rng);
    case K::dark: return apply_tone(img, ToneModel::dark, p, rng);
    case K::contrast: return apply_tone(img, ToneModel::contrast, p, rng);
    case K::elastic_transform: return apply_digital(img, DigitalModel::elastic, p, rng);
    case K::color_quant: return apply_digital(img, DigitalModel::color_quant, p, rng);
    case K::pixelate: return apply_digital(img, DigitalModel::pixelate, p, rng);
    case K::jpeg_compress: return apply_digital(img, DigitalModel::jpeg, p, rng);
  }
  throw Error(Errc::unsupported_kind, "unknown corruption kind");
}

}  // namespace depthbench
