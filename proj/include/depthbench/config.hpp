#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <json.hpp>

#include "depthbench/corruption_kind.hpp"
#include "depthbench/depth_io.hpp"
#include "depthbench/depth_metrics.hpp"
#include "depthbench/severity_table.hpp"

namespace depthbench {

/// Environment variable naming the default config document.
inline constexpr const char* kConfigEnvVar = "DEPTHBENCH_CONFIG";

/// Everything a run needs besides paths given on the command line.
///
///   {
///     "profile": "outdoor-5",
///     "seed_root": 17,
///     "severity_table": {"fog": [...]} | "tables/custom.json",
///     "protocol": {"preset": "kitti", "min_depth": 0.001, "max_depth": 80,
///                  "crop": [top, bottom, left, right] | null, "median_scaling": true},
///     "ground_truth": {"format": "png16", "scale": 256},
///     "predictions": {"format": "pfm", "scale": 1},
///     "baseline": "data/baselines/kitti_c_monodepth2_r18.csv",
///     "frost_assets": "assets/frost",
///     "jobs": 8
///   }
///
/// Every key is optional; unknown keys are rejected. Relative paths resolve
/// against the directory holding the document.
struct Config {
  Profile profile = Profile::outdoor5;
  std::uint64_t seed_root = 0;
  SeverityTable table = SeverityTable::defaults();
  EvalProtocol protocol = EvalProtocol::kitti();
  DepthFormat gt_format = DepthFormat::png16;
  double gt_scale = 256.0;
  DepthFormat pred_format = DepthFormat::png16;
  double pred_scale = 256.0;
  std::optional<std::filesystem::path> baseline;
  std::optional<std::filesystem::path> frost_assets;
  int jobs = 0;

  /// KITTI conventions for outdoor-5, NYU conventions (scale 1000) for indoor-4.
  static Config defaults(Profile profile);
  static Config from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
  static Config load(const std::filesystem::path& path);
};

nlohmann::ordered_json protocol_to_json(const EvalProtocol& protocol);
/// Starts from the preset ("kitti" or "nyu", else fallback) and applies the listed fields.
EvalProtocol protocol_from_json(const nlohmann::json& doc, const EvalProtocol& fallback);

/// Shipped severity-mean baseline for the profile (MonoDepth2 or AdaBins).
std::filesystem::path default_baseline_path(Profile profile);

}  // namespace depthbench
