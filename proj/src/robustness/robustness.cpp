#include "depthbench/robustness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"

namespace depthbench {

namespace {

using CellKey = std::pair<std::string, int>;

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(Errc::parse_error, what + ": '" + text + "' is not a number");
  }
  return v;
}

int parse_level(const std::string& text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(Errc::parse_error, "severity '" + text + "' is neither an integer nor 'mean'");
  }
  return v;
}

/// (kind, severity) -> dee with duplicate detection.
std::map<CellKey, double> index_cells(std::span<const DeeCell> cells) {
  std::map<CellKey, double> out;
  for (const auto& c : cells) {
    if (!out.emplace(CellKey{c.kind, c.severity}, c.dee).second) {
      throw Error(Errc::misaligned_cells, "duplicate cell " + c.kind + "/" + std::to_string(c.severity));
    }
  }
  return out;
}

std::string missing_list(const std::vector<CellKey>& missing) {
  std::string out;
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (i) out += ", ";
    out += "(" + missing[i].first + ", " + std::to_string(missing[i].second) + ")";
  }
  return out;
}

std::vector<DeeCell> sorted_by_level(std::span<const DeeCell> cells) {
  std::vector<DeeCell> out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end(), [](const DeeCell& a, const DeeCell& b) { return a.severity < b.severity; });
  return out;
}

}  // namespace

std::pair<std::vector<DeeCell>, double> parse_dee_csv(const std::string& text, int levels) {
  const CsvTable t = parse_csv(text);
  const auto cm = t.column("model_id");
  const auto ck = t.column("kind");
  const auto cs = t.column("severity");
  const auto cd = t.column("dee");
  std::vector<DeeCell> cells;
  double clean = -1.0;
  for (const auto& row : t.rows) {
    const double value = parse_number(row[cd], "dee");
    if (row[ck] == "clean") {
      clean = value;
      continue;
    }
    if (row[cs] == "mean") {
      for (int l = 1; l <= levels; ++l) cells.push_back({row[cm], row[ck], l, value});
    } else {
      cells.push_back({row[cm], row[ck], parse_level(row[cs]), value});
    }
  }
  return {std::move(cells), clean};
}

std::pair<std::vector<DeeCell>, double> read_dee_csv(const std::filesystem::path& path, int levels) {
  const std::string text = read_text_file(path);
  try {
    return parse_dee_csv(text, levels);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

BaselineTable::BaselineTable(std::string model_id, Profile profile, std::span<const DeeCell> cells, double clean_dee)
    : model_id_(std::move(model_id)), profile_(profile), clean_dee_(clean_dee) {
  const auto index = index_cells(cells);
  std::vector<CellKey> missing;
  for (auto kind : profile_kinds(profile)) {
    for (int l = 1; l <= level_count(profile); ++l) {
      const CellKey key{std::string(name(kind)), l};
      const auto it = index.find(key);
      if (it == index.end()) {
        missing.push_back(key);
        continue;
      }
      if (!(it->second > 0.0)) {
        throw Error(Errc::degenerate_baseline, "baseline DEE must be positive at " + key.first + "/" + std::to_string(l));
      }
      cells_.push_back({model_id_, key.first, l, it->second});
    }
  }
  if (!missing.empty()) throw Error(Errc::missing_cells, "baseline lacks " + missing_list(missing));
}

BaselineTable BaselineTable::load_csv(const std::filesystem::path& path, Profile profile) {
  auto [cells, clean] = read_dee_csv(path, level_count(profile));
  if (cells.empty()) throw Error(Errc::missing_cells, path.string() + " has no cells");
  const std::string id = cells.front().model_id;
  // A baseline measured with weather-precipitation kinds is an outdoor table.
  const bool outdoor_file = std::any_of(cells.begin(), cells.end(), [](const DeeCell& c) {
    return c.kind == "fog" || c.kind == "frost" || c.kind == "snow";
  });
  if (outdoor_file != (profile == Profile::outdoor5)) {
    throw Error(Errc::profile_mismatch, path.string() + " is " + (outdoor_file ? "an outdoor-5" : "an indoor-4") +
                                            " baseline, requested " + std::string(name(profile)));
  }
  std::vector<DeeCell> kept;
  for (const auto& c : cells) {
    CorruptionKind k{};
    if (try_parse_kind(c.kind, k) && profile_has_kind(profile, k)) kept.push_back(c);
  }
  return BaselineTable(id, profile, kept, clean);
}

std::vector<DeeCell> BaselineTable::cells(CorruptionKind kind) const {
  std::vector<DeeCell> out;
  for (const auto& c : cells_) {
    if (c.kind == name(kind)) out.push_back(c);
  }
  return out;
}

double corruption_error(std::span<const DeeCell> model, std::span<const DeeCell> baseline) {
  if (model.empty() || model.size() != baseline.size()) {
    throw Error(Errc::misaligned_cells, "model has " + std::to_string(model.size()) + " cells, baseline " +
                                            std::to_string(baseline.size()));
  }
  const auto m = sorted_by_level(model);
  const auto b = sorted_by_level(baseline);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].kind != m[0].kind || b[i].kind != m[0].kind || m[i].severity != b[i].severity) {
      throw Error(Errc::misaligned_cells, "cells differ in kind or severity: " + m[i].kind + "/" +
                                              std::to_string(m[i].severity) + " vs " + b[i].kind + "/" +
                                              std::to_string(b[i].severity));
    }
    num += m[i].dee;
    den += b[i].dee;
  }
  if (!(den > 0.0)) throw Error(Errc::degenerate_baseline, "baseline DEE sum is zero for " + m[0].kind);
  return 100.0 * num / den;
}

double resilience_rate(std::span<const DeeCell> model, double clean_dee) {
  if (!(clean_dee < 1.0)) throw Error(Errc::degenerate_clean, "clean DEE must be below 1");
  if (model.empty()) throw Error(Errc::misaligned_cells, "resilience rate needs at least one level");
  const auto m = sorted_by_level(model);
  double num = 0.0;
  for (const auto& c : m) num += 1.0 - c.dee;
  return 100.0 * num / (static_cast<double>(m.size()) * (1.0 - clean_dee));
}

RobustnessReport summarize(std::span<const DeeCell> model_cells, const BaselineTable& baseline, double clean_dee) {
  const Profile profile = baseline.profile();
  const int levels = level_count(profile);
  std::set<std::string> ids;
  for (const auto& c : model_cells) ids.insert(c.model_id);
  if (ids.size() > 1) throw Error(Errc::invalid_request, "cells belong to more than one model");
  const auto index = index_cells(model_cells);

  RobustnessReport r;
  r.model_id = ids.empty() ? std::string() : *ids.begin();
  r.baseline_id = baseline.model_id();
  r.profile = profile;
  r.clean_dee = clean_dee;

  std::vector<CellKey> missing;
  for (auto kind : profile_kinds(profile)) {
    for (int l = 1; l <= levels; ++l) {
      CellKey key{std::string(name(kind)), l};
      if (!index.count(key)) missing.push_back(std::move(key));
    }
  }
  if (!missing.empty()) throw Error(Errc::missing_cells, "model lacks " + missing_list(missing));

  for (auto kind : profile_kinds(profile)) {
    std::vector<DeeCell> cells;
    KindResult k;
    k.kind = kind;
    for (int l = 1; l <= levels; ++l) {
      const double v = index.at({std::string(name(kind)), l});
      cells.push_back({r.model_id, std::string(name(kind)), l, v});
      k.dee_by_level.push_back(v);
      k.mean_dee += v;
    }
    k.mean_dee /= levels;
    k.ce = corruption_error(cells, baseline.cells(kind));
    k.rr = resilience_rate(cells, clean_dee);
    r.kinds.push_back(std::move(k));
  }

  for (const auto& k : r.kinds) {
    r.mce += k.ce;
    r.mrr += k.rr;
    r.mdee += k.mean_dee;
  }
  const double n = static_cast<double>(r.kinds.size());
  r.mce /= n;
  r.mrr /= n;
  r.mdee /= n;

  for (auto cat : kAllCategories) {
    CategoryResult c;
    c.category = cat;
    for (const auto& k : r.kinds) {
      if (category_of(k.kind) != cat) continue;
      ++c.kind_count;
      c.mce += k.ce;
      c.mrr += k.rr;
      c.mdee += k.mean_dee;
    }
    if (c.kind_count == 0) continue;
    c.mce /= c.kind_count;
    c.mrr /= c.kind_count;
    c.mdee /= c.kind_count;
    r.categories.push_back(c);
  }

  std::map<std::string, std::vector<DeeCell>> extra;
  for (const auto& [key, v] : index) {
    CorruptionKind kind{};
    if (try_parse_kind(key.first, kind) && profile_has_kind(profile, kind)) {
      if (key.second < 1 || key.second > levels) {
        throw Error(Errc::misaligned_cells, key.first + " severity " + std::to_string(key.second) + " outside profile");
      }
      continue;
    }
    extra[key.first].push_back({r.model_id, key.first, key.second, v});
  }
  for (auto& [kind, cells] : extra) {
    ExternalResult e;
    e.kind = kind;
    for (const auto& c : sorted_by_level(cells)) {
      e.dee_by_level.push_back(c.dee);
      e.mean_dee += c.dee;
    }
    e.mean_dee /= static_cast<double>(cells.size());
    e.rr = resilience_rate(cells, clean_dee);
    r.external.push_back(std::move(e));
  }
  return r;
}

}  // namespace depthbench
