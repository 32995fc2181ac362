#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "depthbench/color.hpp"
#include "depthbench/corruptions.hpp"
#include "depthbench/error.hpp"

namespace depthbench {

ImageBuffer apply_tone(const ImageBuffer& img, ToneModel model, const LevelParams& p, DeterministicRng& rng) {
  ImageBuffer out = img;
  auto s = out.samples();
  switch (model) {
    case ToneModel::brightness: {
      const double shift = p.get("shift");
      for (std::size_t i = 0; i < s.size(); i += 3) {
        auto hsv = rgb_to_hsv(s[i], s[i + 1], s[i + 2]);
        hsv[2] = std::clamp(static_cast<float>(hsv[2] + shift), 0.0f, 1.0f);
        const auto rgb = hsv_to_rgb(hsv[0], hsv[1], hsv[2]);
        std::copy(rgb.begin(), rgb.end(), s.begin() + static_cast<std::ptrdiff_t>(i));
      }
      break;
    }
    case ToneModel::contrast: {
      const double factor = p.get("factor");
      if (factor < 0.0) throw Error(Errc::invalid_parameter, "contrast factor must be non-negative");
      std::array<double, 3> mean{};
      for (std::size_t i = 0; i < s.size(); ++i) mean[i % 3] += s[i];
      for (double& m : mean) m /= static_cast<double>(img.pixel_count());
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double m = mean[i % 3];
        s[i] = static_cast<float>((s[i] - m) * factor + m);
      }
      break;
    }
    case ToneModel::dark: {
      const double scale = p.get("scale");
      const double gamma = p.get("gamma");
      const double lambda = p.get("shot_lambda");
      const double read = p.get("read_sigma");
      if (!(scale > 0.0) || !(gamma > 0.0) || !(lambda > 0.0) || read < 0.0) {
        throw Error(Errc::invalid_parameter, "dark parameters must be positive");
      }
      for (float& v : s) {
        const double x = std::pow(std::max(0.0, v * scale), gamma);
        const double shot = static_cast<double>(rng.poisson(x * lambda)) / lambda;
        v = static_cast<float>(shot + read * rng.normal());
      }
      break;
    }
    default:
      throw Error(Errc::unsupported_kind, "unknown tone model " + std::to_string(static_cast<int>(model)));
  }
  out.clamp01();
  return out;
}

}  // namespace depthbench
