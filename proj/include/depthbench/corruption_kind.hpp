#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace depthbench {

// Enum order is part of the seed derivation (the kind id byte); never reorder.
enum class CorruptionKind : std::uint8_t {
  brightness,
  dark,
  fog,
  frost,
  snow,
  contrast,
  defocus_blur,
  glass_blur,
  motion_blur,
  zoom_blur,
  elastic_transform,
  color_quant,
  gaussian_noise,
  impulse_noise,
  shot_noise,
  iso_noise,
  pixelate,
  jpeg_compress,
};

inline constexpr int kKindCount = 18;

inline constexpr std::array<CorruptionKind, kKindCount> kAllKinds = {
    CorruptionKind::brightness,     CorruptionKind::dark,          CorruptionKind::fog,
    CorruptionKind::frost,          CorruptionKind::snow,          CorruptionKind::contrast,
    CorruptionKind::defocus_blur,   CorruptionKind::glass_blur,    CorruptionKind::motion_blur,
    CorruptionKind::zoom_blur,      CorruptionKind::elastic_transform, CorruptionKind::color_quant,
    CorruptionKind::gaussian_noise, CorruptionKind::impulse_noise, CorruptionKind::shot_noise,
    CorruptionKind::iso_noise,      CorruptionKind::pixelate,      CorruptionKind::jpeg_compress,
};

enum class Category : std::uint8_t { weather_lighting, sensor_movement, data_processing };

inline constexpr std::array<Category, 3> kAllCategories = {Category::weather_lighting, Category::sensor_movement,
                                                           Category::data_processing};

std::string_view name(CorruptionKind kind) noexcept;
std::string_view name(Category category) noexcept;
Category category_of(CorruptionKind kind) noexcept;

/// Throws Error(unsupported_kind) for unknown names.
CorruptionKind parse_kind(std::string_view text);
bool try_parse_kind(std::string_view text, CorruptionKind& out) noexcept;

enum class Profile : std::uint8_t { outdoor5, indoor4 };

std::string_view name(Profile profile) noexcept;
/// Accepts "outdoor-5" and "indoor-4". Throws Error(invalid_parameter).
Profile parse_profile(std::string_view text);
int level_count(Profile profile) noexcept;
/// Kinds generated and reported under the profile, in enum order.
std::vector<CorruptionKind> profile_kinds(Profile profile);
bool profile_has_kind(Profile profile, CorruptionKind kind) noexcept;

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::gaussian_noise;
  int severity = 1;
  std::uint64_t seed = 0;
};

}  // namespace depthbench
