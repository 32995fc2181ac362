#include <algorithm>
#include <string>

#include "depthbench/color.hpp"
#include "depthbench/corruptions.hpp"
#include "depthbench/error.hpp"

namespace depthbench {

namespace {

float poisson_sample(DeterministicRng& rng, double x, double lambda) {
  return static_cast<float>(static_cast<double>(rng.poisson(x * lambda)) / lambda);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw Error(Errc::invalid_parameter, std::string(what) + " must be positive");
}

}  // namespace

ImageBuffer apply_noise(const ImageBuffer& img, NoiseModel model, const LevelParams& p, DeterministicRng& rng) {
  ImageBuffer out = img;
  auto s = out.samples();
  switch (model) {
    case NoiseModel::gaussian: {
      const double sigma = p.get("sigma");
      if (sigma < 0.0) throw Error(Errc::invalid_parameter, "gaussian sigma must be non-negative");
      if (sigma == 0.0) break;
      for (float& v : s) v = static_cast<float>(v + sigma * rng.normal());
      break;
    }
    case NoiseModel::shot: {
      const double lambda = p.get("lambda");
      require_positive(lambda, "shot lambda");
      for (float& v : s) v = poisson_sample(rng, std::max(v, 0.0f), lambda);
      break;
    }
    case NoiseModel::impulse: {
      const double amount = p.get("amount");
      if (amount < 0.0 || amount > 1.0) throw Error(Errc::invalid_parameter, "impulse amount must be in [0,1]");
      for (std::size_t i = 0; i < s.size(); i += 3) {
        if (rng.uniform() < amount) {
          const float v = rng.uniform() < 0.5 ? 0.0f : 1.0f;
          s[i] = s[i + 1] = s[i + 2] = v;
        }
      }
      break;
    }
    case NoiseModel::iso: {
      const double lambda = p.get("lambda");
      const double chroma = p.get("chroma_sigma");
      require_positive(lambda, "iso lambda");
      for (std::size_t i = 0; i < s.size(); i += 3) {
        auto ycc = rgb_to_ycbcr(s[i], s[i + 1], s[i + 2]);
        ycc[0] = poisson_sample(rng, std::max(ycc[0], 0.0f), lambda);
        ycc[1] = static_cast<float>(ycc[1] + chroma * rng.normal());
        ycc[2] = static_cast<float>(ycc[2] + chroma * rng.normal());
        const auto rgb = ycbcr_to_rgb(ycc[0], ycc[1], ycc[2]);
        s[i] = rgb[0];
        s[i + 1] = rgb[1];
        s[i + 2] = rgb[2];
      }
      break;
    }
    default:
      throw Error(Errc::unsupported_kind, "unknown noise model " + std::to_string(static_cast<int>(model)));
  }
  out.clamp01();
  return out;
}

}  // namespace depthbench
