#include "depthbench/corruption_kind.hpp"

#include <algorithm>

#include "depthbench/error.hpp"

namespace depthbench {

namespace {

constexpr std::array<std::string_view, kKindCount> kKindNames = {
    "brightness",     "dark",          "fog",        "frost",     "snow",          "contrast",
    "defocus_blur",   "glass_blur",    "motion_blur", "zoom_blur", "elastic_transform", "color_quant",
    "gaussian_noise", "impulse_noise", "shot_noise", "iso_noise", "pixelate",      "jpeg_compress",
};

}  // namespace

std::string_view name(CorruptionKind kind) noexcept { return kKindNames[static_cast<std::size_t>(kind)]; }

std::string_view name(Category category) noexcept {
  switch (category) {
    case Category::weather_lighting:
      return "weather_lighting";
    case Category::sensor_movement:
      return "sensor_movement";
    case Category::data_processing:
      return "data_processing";
  }
  return "";
}

Category category_of(CorruptionKind kind) noexcept {
  const auto i = static_cast<int>(kind);
  if (i < 6) return Category::weather_lighting;
  if (i < 12) return Category::sensor_movement;
  return Category::data_processing;
}

bool try_parse_kind(std::string_view text, CorruptionKind& out) noexcept {
  const auto it = std::find(kKindNames.begin(), kKindNames.end(), text);
  if (it == kKindNames.end()) return false;
  out = static_cast<CorruptionKind>(it - kKindNames.begin());
  return true;
}

CorruptionKind parse_kind(std::string_view text) {
  CorruptionKind kind{};
  if (!try_parse_kind(text, kind)) throw Error(Errc::unsupported_kind, "unknown corruption kind '" + std::string(text) + "'");
  return kind;
}

std::string_view name(Profile profile) noexcept {
  return profile == Profile::outdoor5 ? "outdoor-5" : "indoor-4";
}

Profile parse_profile(std::string_view text) {
  if (text == "outdoor-5") return Profile::outdoor5;
  if (text == "indoor-4") return Profile::indoor4;
  throw Error(Errc::invalid_parameter, "unknown profile '" + std::string(text) + "' (expected outdoor-5 or indoor-4)");
}

int level_count(Profile profile) noexcept { return profile == Profile::outdoor5 ? 5 : 4; }

bool profile_has_kind(Profile profile, CorruptionKind kind) noexcept {
  if (profile == Profile::outdoor5) return true;
  return kind != CorruptionKind::fog && kind != CorruptionKind::frost && kind != CorruptionKind::snow;
}

std::vector<CorruptionKind> profile_kinds(Profile profile) {
  std::vector<CorruptionKind> kinds;
  for (auto k : kAllKinds) {
    if (profile_has_kind(profile, k)) kinds.push_back(k);
  }
  return kinds;
}

}  // namespace depthbench
