#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "depthbench/corruption_kind.hpp"

namespace depthbench {

/// One (model, kind, severity) DEE measurement. kind is a canonical kind name
/// or "style:<name>" for externally produced sets; severity 0 marks clean.
struct DeeCell {
  std::string model_id;
  std::string kind;
  int severity = 0;
  double dee = 0.0;

  bool operator==(const DeeCell&) const = default;
};

/// Reference model DEE for every (kind, level) of a profile plus its clean DEE.
class BaselineTable {
 public:
  BaselineTable() = default;
  /// Throws missing_cells on incomplete coverage, degenerate_baseline on dee <= 0.
  BaselineTable(std::string model_id, Profile profile, std::span<const DeeCell> cells, double clean_dee);

  /// CSV with header model_id,kind,severity,dee. Severity "mean" replicates the
  /// value across all levels of the profile; kind "clean" (severity 0) is the clean DEE.
  static BaselineTable load_csv(const std::filesystem::path& path, Profile profile);

  const std::string& model_id() const noexcept { return model_id_; }
  Profile profile() const noexcept { return profile_; }
  double clean_dee() const noexcept { return clean_dee_; }
  /// Cells of one kind ordered by severity.
  std::vector<DeeCell> cells(CorruptionKind kind) const;
  const std::vector<DeeCell>& all_cells() const noexcept { return cells_; }

 private:
  std::string model_id_;
  Profile profile_ = Profile::outdoor5;
  double clean_dee_ = 0.0;
  std::vector<DeeCell> cells_;
};

/// Cells as read from a model_id,kind,severity,dee CSV. "mean" rows are
/// replicated across levels 1..levels. Returns (cells, clean_dee or -1).
std::pair<std::vector<DeeCell>, double> read_dee_csv(const std::filesystem::path& path, int levels);
std::pair<std::vector<DeeCell>, double> parse_dee_csv(const std::string& text, int levels);

/// 100 · Σ_l model / Σ_l baseline. Throws misaligned_cells or degenerate_baseline.
double corruption_error(std::span<const DeeCell> model, std::span<const DeeCell> baseline);
/// 100 · Σ_l (1 - DEE_l) / (L · (1 - clean)). Throws degenerate_clean for clean >= 1.
double resilience_rate(std::span<const DeeCell> model, double clean_dee);

struct KindResult {
  CorruptionKind kind{};
  std::vector<double> dee_by_level;
  double mean_dee = 0.0;
  double ce = 0.0;
  double rr = 0.0;
};

struct CategoryResult {
  Category category{};
  int kind_count = 0;
  double mce = 0.0;
  double mrr = 0.0;
  double mdee = 0.0;
};

/// Cells outside the profile's kinds (e.g. "style:*"): DEE and RR only.
struct ExternalResult {
  std::string kind;
  std::vector<double> dee_by_level;
  double mean_dee = 0.0;
  double rr = 0.0;
};

struct RobustnessReport {
  std::string model_id;
  std::string baseline_id;
  Profile profile = Profile::outdoor5;
  double clean_dee = 0.0;
  double mce = 0.0;
  double mrr = 0.0;
  double mdee = 0.0;
  std::vector<KindResult> kinds;
  std::vector<CategoryResult> categories;
  std::vector<ExternalResult> external;
};

/// Full report for one model. Input order is irrelevant. Throws missing_cells
/// naming the absent (kind, severity) pairs.
RobustnessReport summarize(std::span<const DeeCell> model_cells, const BaselineTable& baseline, double clean_dee);

}  // namespace depthbench
