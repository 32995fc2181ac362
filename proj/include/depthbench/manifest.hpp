#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "depthbench/corruption_kind.hpp"

namespace depthbench {

inline constexpr int kManifestSchemaVersion = 1;

struct ManifestEntry {
  /// Clean image, '/'-separated, relative to the clean root.
  std::string relative_path;
  CorruptionKind kind = CorruptionKind::brightness;
  int severity = 1;
  std::uint64_t derived_seed = 0;
  /// Relative to the dataset root: <kind>/<severity>/<relative_path, .png>.
  std::string output_path;
  /// Absent when the entry failed or the manifest is a plan.
  std::optional<std::uint64_t> content_hash;

  bool operator==(const ManifestEntry&) const = default;
};

struct ManifestFailure {
  std::string relative_path;
  std::string kind;
  int severity = 0;
  std::string message;

  bool operator==(const ManifestFailure&) const = default;
};

/// Record of one generated dataset. Entries are kept in canonical order:
/// kind (enum order), severity, relative path.
struct DatasetManifest {
  int schema_version = kManifestSchemaVersion;
  std::string base_dataset;
  Profile profile = Profile::outdoor5;
  std::uint64_t seed_root = 0;
  std::string clean_dir;
  std::vector<CorruptionKind> kinds;
  std::vector<int> severities;
  std::uint64_t severity_table_hash = 0;
  std::uint64_t frost_asset_hash = 0;
  std::string frost_source;
  /// Asset directory for photographic frost; empty for the procedural source.
  std::string frost_assets;
  std::size_t image_count = 0;
  std::vector<ManifestEntry> entries;
  std::vector<ManifestFailure> failures;

  nlohmann::ordered_json to_json() const;
  /// Throws version_mismatch for another schema_version, parse_error otherwise.
  static DatasetManifest from_json(const nlohmann::json& doc);
  std::string dump() const;
  /// FNV-1a 64 of dump().
  std::uint64_t hash() const;
  void save(const std::filesystem::path& path) const;
  static DatasetManifest load(const std::filesystem::path& path);

  bool operator==(const DatasetManifest&) const = default;
};

/// <kind>/<severity>/<relative_path> with the extension replaced by .png.
std::string output_path_for(const std::string& relative_path, CorruptionKind kind, int severity);

/// File names used inside a generated dataset root.
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kSeverityTableFile = "severity_table.json";

}  // namespace depthbench
