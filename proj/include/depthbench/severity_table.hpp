#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "depthbench/corruption_kind.hpp"

namespace depthbench {

/// Direction in which a parameter moves as distortion increases. Checks are
/// non-strict; "free" parameters are not checked at all.
enum class Direction { increasing, decreasing, free };

struct ParamSchema {
  std::string_view name;
  Direction direction;
};

std::span<const ParamSchema> parameter_schema(CorruptionKind kind);

/// Named parameters of one (kind, level) cell, in schema order.
class LevelParams {
 public:
  LevelParams() = default;
  explicit LevelParams(std::vector<std::pair<std::string, double>> values) : values_(std::move(values)) {}

  /// Throws invalid_parameter if the name is absent.
  double get(std::string_view name) const;
  int get_int(std::string_view name) const;
  void set(std::string_view name, double value);
  const std::vector<std::pair<std::string, double>>& values() const noexcept { return values_; }

  bool operator==(const LevelParams&) const = default;

 private:
  std::vector<std::pair<std::string, double>> values_;
};

/// Per-kind, per-level corruption parameters. Levels are 1-based.
///
/// Document form: {"<kind>": [{"<param>": value, ...}, ...], ...}. Loading a
/// document replaces the listed kinds and keeps defaults for the rest.
class SeverityTable {
 public:
  static SeverityTable defaults();
  static SeverityTable from_json(const nlohmann::json& doc);
  static SeverityTable load(const std::filesystem::path& path);

  /// Replace every kind present in doc, then validate.
  void apply_overrides(const nlohmann::json& doc);

  int levels(CorruptionKind kind) const noexcept;
  /// Throws invalid_parameter when level is outside [1, levels(kind)].
  const LevelParams& params(CorruptionKind kind, int level) const;
  void set_levels(CorruptionKind kind, std::vector<LevelParams> levels);

  /// Schema completeness and declared monotone directions; throws invalid_parameter.
  void validate() const;

  nlohmann::json to_json() const;
  /// Compact JSON with sorted keys; the hash is FNV-1a over these bytes.
  std::string canonical() const;
  std::uint64_t hash() const;

  bool operator==(const SeverityTable&) const = default;

 private:
  std::array<std::vector<LevelParams>, kKindCount> cells_;
};

}  // namespace depthbench
