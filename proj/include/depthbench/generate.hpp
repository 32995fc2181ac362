#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "depthbench/corruption_kind.hpp"
#include "depthbench/frost.hpp"
#include "depthbench/manifest.hpp"
#include "depthbench/severity_table.hpp"

namespace depthbench {

struct GenerateOptions {
  std::filesystem::path clean_dir;
  std::filesystem::path out_dir;
  std::vector<CorruptionKind> kinds;
  /// Empty selects every level of the profile.
  std::vector<int> severities;
  Profile profile = Profile::outdoor5;
  std::uint64_t seed_root = 0;
  SeverityTable table = SeverityTable::defaults();
  /// Photographic frost overlays; the procedural source is used when unset.
  std::optional<std::filesystem::path> frost_assets;
  /// Defaults to the clean directory's name.
  std::string base_dataset;
  /// Worker threads; 0 lets OpenMP decide. Never changes any output byte.
  int jobs = 0;
  /// List images and build the manifest without decoding or writing images.
  bool plan_only = false;
  /// Called after each clean image is finished.
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct GenerateResult {
  DatasetManifest manifest;
  /// Files written because they were absent or differed.
  std::size_t written = 0;
  /// Files already on disk with the expected content.
  std::size_t unchanged = 0;
};

/// Manifest entries (without hashes) for images × kinds × severities in
/// canonical order.
std::vector<ManifestEntry> plan_entries(const std::vector<std::string>& images, const std::vector<CorruptionKind>& kinds,
                                        const std::vector<int>& severities, std::uint64_t seed_root);

/// Writes out_dir/<kind>/<severity>/<relative_path>, severity_table.json and
/// manifest.json. Re-running over an existing output compares content and
/// rewrites only what differs. Per-image failures are recorded in the
/// manifest and do not stop the run.
GenerateResult generate_dataset(const GenerateOptions& options);

struct VerifyOptions {
  std::filesystem::path manifest_path;
  /// Entries to audit; 0 audits all.
  std::size_t sample = 50;
  /// Overrides the clean directory recorded in the manifest.
  std::optional<std::filesystem::path> clean_dir;
  int jobs = 0;
};

struct VerifyResult {
  std::size_t checked = 0;
  std::vector<std::string> problems;
  bool ok() const noexcept { return problems.empty(); }
};

/// k distinct indices in [0, n), ascending, drawn with a rng seeded by seed.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

/// Regenerates a deterministic sample of entries (seeded by the manifest hash)
/// and compares the content hash with both the manifest and the file on disk.
VerifyResult verify_dataset(const VerifyOptions& options);

}  // namespace depthbench
