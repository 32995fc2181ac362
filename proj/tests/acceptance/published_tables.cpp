#include "published_tables.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "depthbench/csv.hpp"

namespace acceptance {

namespace db = depthbench;

double ScoreTable::at(const std::string& model, const std::string& column) const {
  const auto row = values.find(model);
  if (row == values.end()) throw std::runtime_error(name + ": no model " + model);
  const auto cell = row->second.find(column);
  if (cell == row->second.end()) throw std::runtime_error(name + ": no column " + column);
  return cell->second;
}

double& ScoreTable::at(const std::string& model, const std::string& column) {
  auto& row = values.at(model);
  const auto cell = row.find(column);
  if (cell == row.end()) throw std::runtime_error(name + ": no column " + column);
  return cell->second;
}

ScoreTable load_table(const std::filesystem::path& path, const std::string& name) {
  const auto csv = db::read_csv(path);
  ScoreTable t;
  t.name = name;
  t.columns.assign(csv.header.begin() + 1, csv.header.end());
  for (const auto& row : csv.rows) {
    t.models.push_back(row.at(0));
    auto& values = t.values[row.at(0)];
    for (std::size_t c = 1; c < row.size(); ++c) values[csv.header[c]] = std::stod(row[c]);
  }
  return t;
}

std::vector<Erratum> load_errata(const std::filesystem::path& path) {
  const auto csv = db::read_csv(path);
  std::vector<Erratum> out;
  for (const auto& row : csv.rows) {
    Erratum e;
    e.id = row.at(csv.column("id"));
    e.table = row.at(csv.column("table"));
    e.op = row.at(csv.column("op"));
    e.model = row.at(csv.column("model"));
    e.column = row.at(csv.column("column"));
    if (e.op == "set") {
      e.verbatim = std::stod(row.at(csv.column("verbatim")));
      e.corrected = std::stod(row.at(csv.column("corrected")));
    }
    out.push_back(e);
  }
  return out;
}

ScoreTable* Benchmark::table(const std::string& name) {
  for (auto* t : {&dee, &ce, &rr}) {
    if (t->name == name) return t;
  }
  return nullptr;
}

void Benchmark::apply(const Erratum& e, bool corrected) {
  ScoreTable* t = table(e.table);
  if (t == nullptr) throw std::runtime_error("erratum " + e.id + " names unknown table " + e.table);
  if (e.op == "set") {
    t->at(e.model, e.column) = corrected ? e.corrected : e.verbatim;
  } else if (e.op == "swap_row") {
    // swapping is its own inverse; callers track the state
    std::swap(t->values.at(e.model), t->values.at(e.column));
  } else {
    throw std::runtime_error("erratum " + e.id + ": unknown op " + e.op);
  }
}

namespace {

std::vector<db::DeeCell> row_cells(const Benchmark& b, const std::string& model) {
  std::vector<db::DeeCell> cells;
  const int levels = db::level_count(b.profile);
  for (auto kind : db::profile_kinds(b.profile)) {
    const std::string k(db::name(kind));
    for (int s = 1; s <= levels; ++s) cells.push_back({model, k, s, b.dee.at(model, k)});
  }
  return cells;
}

}  // namespace

db::RobustnessReport model_report(const Benchmark& b, const std::string& model) {
  const auto base_cells = row_cells(b, b.baseline_model);
  const db::BaselineTable baseline(b.baseline_model, b.profile, base_cells, b.dee.at(b.baseline_model, "clean"));
  const auto cells = row_cells(b, model);
  return db::summarize(cells, baseline, b.dee.at(model, "clean"));
}

Reconstruction reconstruct(const Benchmark& b, double tol) {
  Reconstruction r;
  for (const auto& model : b.dee.models) {
    const auto report = model_report(b, model);
    for (const auto& k : report.kinds) {
      const std::string kind(db::name(k.kind));
      ++r.cells;
      const double ce = b.ce.at(model, kind);
      const double rr = b.rr.at(model, kind);
      if (std::abs(k.ce - ce) > tol + 1e-9) r.ce_misses.push_back({model, kind, ce, k.ce});
      if (std::abs(k.rr - rr) > tol + 1e-9) r.rr_misses.push_back({model, kind, rr, k.rr});
    }
  }
  return r;
}

}  // namespace acceptance
