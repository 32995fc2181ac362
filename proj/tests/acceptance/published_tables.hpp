#pragma once

// Per-model score tables shipped under data/published/ and the errata list that
// corrects their internal inconsistencies.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "depthbench/corruption_kind.hpp"
#include "depthbench/robustness.hpp"

namespace acceptance {

struct ScoreTable {
  std::string name;
  std::vector<std::string> columns;  // without the model column
  std::vector<std::string> models;
  std::map<std::string, std::map<std::string, double>> values;

  double at(const std::string& model, const std::string& column) const;
  double& at(const std::string& model, const std::string& column);
  bool has(const std::string& model) const { return values.count(model) != 0; }
};

ScoreTable load_table(const std::filesystem::path& path, const std::string& name);

struct Erratum {
  std::string id;
  std::string table;
  std::string op;  // set | swap_row
  std::string model;
  std::string column;  // second model for swap_row
  double verbatim = 0.0;
  double corrected = 0.0;
};

std::vector<Erratum> load_errata(const std::filesystem::path& path);

/// One benchmark: DEE table plus the CE and RR tables derived from it.
struct Benchmark {
  depthbench::Profile profile;
  std::string baseline_model;
  ScoreTable dee;
  ScoreTable ce;
  ScoreTable rr;
  std::optional<ScoreTable> metrics;

  ScoreTable* table(const std::string& name);
  void apply(const Erratum& e, bool corrected);
};

struct CellCheck {
  std::string model;
  std::string kind;
  double expected = 0.0;
  double got = 0.0;
};

struct Reconstruction {
  std::size_t cells = 0;
  std::vector<CellCheck> ce_misses;
  std::vector<CellCheck> rr_misses;
};

/// Per-model report through depthbench::summarize with severity-mean cells.
depthbench::RobustnessReport model_report(const Benchmark& b, const std::string& model);

/// Compares every (model, kind) CE and RR cell with tolerance tol.
Reconstruction reconstruct(const Benchmark& b, double tol);

}  // namespace acceptance
