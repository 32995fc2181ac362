#pragma once

#include "depthbench/corruption_kind.hpp"
#include "depthbench/frost.hpp"
#include "depthbench/image.hpp"
#include "depthbench/rng.hpp"
#include "depthbench/severity_table.hpp"

namespace depthbench {

enum class NoiseModel { gaussian, shot, impulse, iso };
enum class BlurModel { defocus, glass, motion, zoom };
enum class WeatherModel { fog, frost, snow };
enum class ToneModel { brightness, dark, contrast };
enum class DigitalModel { elastic, color_quant, pixelate, jpeg };

// Family operations take the parameter record of one level so synthetic
// entries (sigma = 0, z_max = 1, ...) can be exercised directly. Every result
// has the input dimensions and samples in [0,1].

ImageBuffer apply_noise(const ImageBuffer& img, NoiseModel model, const LevelParams& p, DeterministicRng& rng);
ImageBuffer apply_blur(const ImageBuffer& img, BlurModel model, const LevelParams& p, DeterministicRng& rng);
/// frost may be null for fog and snow; frost with an empty source throws missing_asset.
ImageBuffer apply_weather(const ImageBuffer& img, WeatherModel model, const LevelParams& p, DeterministicRng& rng,
                          const FrostSource* frost = nullptr);
ImageBuffer apply_tone(const ImageBuffer& img, ToneModel model, const LevelParams& p, DeterministicRng& rng);
ImageBuffer apply_digital(const ImageBuffer& img, DigitalModel model, const LevelParams& p, DeterministicRng& rng);

/// Minimum frame edge accepted by apply_corruption.
inline constexpr int kMinCorruptionEdge = 8;

/// Dispatch on spec.kind with a rng seeded from spec.seed. frost defaults to
/// ProceduralFrost::instance().
ImageBuffer apply_corruption(const ImageBuffer& img, const CorruptionSpec& spec, const SeverityTable& table,
                             const FrostSource* frost = nullptr);

/// Centre-crop by 1/zoom, upscale bilinearly by zoom, trim to the original size.
ImageBuffer clipped_zoom(const ImageBuffer& img, double zoom);
Plane clipped_zoom(const Plane& field, double zoom);

/// Weighted sum of integer-shifted copies along a line at angle_deg; taps
/// i = 0..2·radius with weights proportional to exp(-i²/2σ²).
ImageBuffer motion_blur_raw(const ImageBuffer& img, int radius, double sigma, double angle_deg);
Plane motion_blur_raw(const Plane& field, int radius, double sigma, double angle_deg);

/// Disk of the given radius smoothed by a small Gaussian (alias_sigma), unit sum.
Kernel2D defocus_kernel(double radius, double alias_sigma);

}  // namespace depthbench
