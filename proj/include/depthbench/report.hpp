#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "depthbench/robustness.hpp"

namespace depthbench {

inline constexpr int kReportSchemaVersion = 1;

struct ReportProvenance {
  std::string baseline_source;
  std::string cells_source;
  /// Hex FNV-1a of the dataset manifest, when known.
  std::optional<std::string> manifest_hash;
  /// Evaluation protocol as written by protocol_to_json, when known.
  std::optional<nlohmann::ordered_json> protocol;
  bool operator==(const ReportProvenance&) const = default;
};

/// Serialised robustness report. Every number is stored at full precision;
/// the "presentation" block repeats the headline values rounded the way
/// tables print them (percentages to 1 decimal, DEE to 3) and is derived,
/// never read back.
struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  RobustnessReport report;
  ReportProvenance provenance;

  nlohmann::ordered_json to_json() const;
  /// Throws version_mismatch or parse_error.
  static ReportDocument from_json(const nlohmann::ordered_json& doc);
  static ReportDocument parse(const std::string& text);
  static ReportDocument load(const std::filesystem::path& path);
  /// Two-space indented JSON with a trailing newline; parse → dump is byte-identical.
  std::string dump() const;
};

/// Throws profile_mismatch when the baseline was built for another profile.
ReportDocument build_report(std::span<const DeeCell> cells, double clean_dee, const BaselineTable& baseline,
                            Profile profile, ReportProvenance provenance = {});

/// kind,category,level_1..level_L,mean
std::string dee_matrix_csv(const RobustnessReport& r);
/// kind,category,ce,rr,mean_dee (external kinds leave ce empty)
std::string kind_scores_csv(const RobustnessReport& r);
/// category,kinds,mce,mrr,mdee
std::string categories_csv(const RobustnessReport& r);
/// Long form for severity curves: kind,severity,dee
std::string severity_curves_csv(const RobustnessReport& r);

/// report.json, dee_matrix.csv, kind_scores.csv, categories.csv, severity_curves.csv.
void write_report_bundle(const ReportDocument& doc, const std::filesystem::path& dir);

/// Human-readable summary: headline values and one line per kind.
std::string summary_text(const ReportDocument& doc);

/// Half away from zero at the given number of decimals.
double round_to(double value, int decimals);

}  // namespace depthbench
