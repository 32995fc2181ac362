#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depthbench/depth_io.hpp"
#include "depthbench/depth_metrics.hpp"
#include "depthbench/robustness.hpp"

namespace depthbench {

/// A (kind, severity) cell to evaluate. kind is a canonical kind name,
/// "style:<name>" for an external set, or "clean" with severity 0.
struct CellId {
  std::string kind;
  int severity = 0;
  bool operator==(const CellId&) const = default;
  auto operator<=>(const CellId&) const = default;
};

struct CellScores {
  CellId cell;
  DepthScores scores;
  std::size_t images = 0;
};

struct EvaluateOptions {
  std::filesystem::path pred_root;
  std::filesystem::path gt_root;
  /// Clean RGB image paths relative to the dataset root; they name the
  /// ground-truth and prediction files.
  std::vector<std::string> images;
  std::vector<CellId> cells;
  bool include_clean = true;
  EvalProtocol protocol = EvalProtocol::kitti();
  DepthFormat gt_format = DepthFormat::png16;
  double gt_scale = 256.0;
  DepthFormat pred_format = DepthFormat::png16;
  double pred_scale = 256.0;
  std::string model_id;
  int jobs = 0;
};

struct EvaluationResult {
  std::string model_id;
  std::optional<CellScores> clean;
  std::vector<CellScores> cells;

  std::vector<DeeCell> dee_cells() const;
  /// -1 when the clean set was not evaluated.
  double clean_dee() const;
  /// model_id,kind,severity,dee,abs_rel,sq_rel,rmse,rmse_log,d1,d2,d3,images;
  /// the clean row uses kind "clean" and severity 0.
  std::string to_csv() const;
};

/// Every kind of the profile at every selected severity (all when empty).
std::vector<CellId> profile_cells(Profile profile, const std::vector<CorruptionKind>& kinds,
                                  const std::vector<int>& severities);

/// gt_root/<relative_path with the format's extension>.
std::filesystem::path ground_truth_path(const std::filesystem::path& gt_root, const std::string& relative_path,
                                        DepthFormat format);
/// pred_root/clean/<path>, pred_root/<kind>/<severity>/<path>, or
/// pred_root/style_<name>/<severity>/<path> for "style:<name>".
std::filesystem::path prediction_path(const std::filesystem::path& pred_root, const CellId& cell,
                                      const std::string& relative_path, DepthFormat format);

/// Numeric level directories under pred_root/style_<name>, ascending.
std::vector<int> style_levels(const std::filesystem::path& pred_root, const std::string& style);

/// Scores every cell over every image, each image weighted equally. All files
/// are checked before any is decoded: an absent prediction raises
/// missing_prediction naming its path, an absent ground truth raises io_error.
EvaluationResult evaluate_predictions(const EvaluateOptions& options);

}  // namespace depthbench
