#include "depthbench/frost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "depthbench/error.hpp"
#include "depthbench/imageops.hpp"
#include "depthbench/rng.hpp"

namespace depthbench {

namespace {

constexpr std::uint64_t kFrostSeed = 0x6672'6f73'7476'3031ULL;  // "frostv01"

void standardize(Plane& p) {
  auto v = p.values();
  double mean = 0.0;
  for (float x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (float x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(v.size()));
  for (float& x : v) x = sd > 0.0 ? static_cast<float>((x - mean) / sd) : 0.0f;
}

Plane smoothed_noise(int width, int height, double sigma, DeterministicRng& rng) {
  Plane p(width, height);
  for (float& x : p.values()) x = static_cast<float>(rng.uniform());
  p = gaussian_blur(p, sigma);
  standardize(p);
  return p;
}

}  // namespace

ImageBuffer synthesize_frost(std::size_t variant, int width, int height) {
  DeterministicRng rng(splitmix64_mix(kFrostSeed + variant));
  const Plane fine = smoothed_noise(width, height, 1.5, rng);
  const Plane coarse = smoothed_noise(width, height, 6.0, rng);
  const double threshold = 0.9 + 0.15 * static_cast<double>(variant % 3);

  Plane streaks(width, height);
  const int count = static_cast<int>((static_cast<long long>(width) * height) / 3000) * (1 + static_cast<int>(variant % 2));
  for (int s = 0; s < count; ++s) {
    double x = rng.uniform(0.0, width);
    double y = rng.uniform(0.0, height);
    const double angle = rng.uniform(0.0, std::numbers::pi);
    const int length = rng.uniform_int(8, 48);
    const float intensity = static_cast<float>(rng.uniform(0.4, 1.0));
    const double dx = std::cos(angle);
    const double dy = std::sin(angle);
    for (int i = 0; i < length; ++i, x += dx, y += dy) {
      const int xi = static_cast<int>(x);
      const int yi = static_cast<int>(y);
      if (xi < 0 || yi < 0 || xi >= width || yi >= height) break;
      streaks.at(xi, yi) = std::max(streaks.at(xi, yi), intensity);
    }
  }
  streaks = gaussian_blur(streaks, 0.6);

  ImageBuffer out(width, height);
  const auto f = fine.values();
  const auto c = coarse.values();
  const auto st = streaks.values();
  auto px = out.samples();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double field = 0.6 * f[i] + 0.4 * c[i];
    const double crystal = std::clamp((field - threshold) / 1.5, 0.0, 1.0);
    const double haze = 0.04 * std::clamp(c[i] + 1.0, 0.0, 3.0);
    const double t = std::clamp(std::pow(crystal, 0.7) + 1.6 * st[i] + haze, 0.0, 1.0);
    px[3 * i] = static_cast<float>(0.85 * t);
    px[3 * i + 1] = static_cast<float>(0.93 * t);
    px[3 * i + 2] = static_cast<float>(t);
  }
  return out;
}

std::shared_ptr<const ImageBuffer> ProceduralFrost::texture(std::size_t variant, int min_width, int min_height) const {
  if (variant >= kVariants) throw Error(Errc::missing_asset, "frost variant " + std::to_string(variant) + " does not exist");
  // Round up so nearby frame sizes share one texture.
  const int w = (min_width + 64 + 127) / 128 * 128;
  const int h = (min_height + 64 + 127) / 128 * 128;
  const auto key = std::make_tuple(variant, w, h);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto tex = std::make_shared<const ImageBuffer>(synthesize_frost(variant, w, h));
  std::lock_guard lock(mutex_);
  return cache_.emplace(key, std::move(tex)).first->second;
}

std::uint64_t ProceduralFrost::identity_hash() const { return fnv1a64(description()); }

const ProceduralFrost& ProceduralFrost::instance() {
  static const ProceduralFrost frost;
  return frost;
}

}  // namespace depthbench
