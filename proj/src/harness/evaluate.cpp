#include "depthbench/evaluate.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"

namespace depthbench {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kStylePrefix = "style:";

fs::path with_extension(const std::string& relative_path, DepthFormat format) {
  fs::path p(relative_path);
  p.replace_extension(extension(format));
  return p;
}

void check_cell(const CellId& c) {
  if (c.kind.rfind(kStylePrefix, 0) == 0) {
    if (c.kind.size() == kStylePrefix.size() || c.kind.find('/') != std::string::npos) {
      throw Error(Errc::invalid_request, "malformed style kind '" + c.kind + "'");
    }
  } else {
    parse_kind(c.kind);
  }
  if (c.severity < 1) throw Error(Errc::invalid_request, "severity must be positive for " + c.kind);
}

}  // namespace

std::vector<CellId> profile_cells(Profile profile, const std::vector<CorruptionKind>& kinds,
                                  const std::vector<int>& severities) {
  std::vector<int> levels = severities;
  if (levels.empty()) {
    levels.resize(static_cast<std::size_t>(level_count(profile)));
    std::iota(levels.begin(), levels.end(), 1);
  }
  std::vector<CorruptionKind> ks = kinds.empty() ? profile_kinds(profile) : kinds;
  std::vector<CellId> out;
  for (auto k : ks) {
    for (int l : levels) out.push_back({std::string(name(k)), l});
  }
  return out;
}

fs::path ground_truth_path(const fs::path& gt_root, const std::string& relative_path, DepthFormat format) {
  return gt_root / with_extension(relative_path, format);
}

fs::path prediction_path(const fs::path& pred_root, const CellId& cell, const std::string& relative_path,
                         DepthFormat format) {
  const fs::path rel = with_extension(relative_path, format);
  if (cell.kind == "clean") return pred_root / "clean" / rel;
  std::string dir = cell.kind;
  if (dir.rfind(kStylePrefix, 0) == 0) dir = "style_" + dir.substr(kStylePrefix.size());
  return pred_root / dir / std::to_string(cell.severity) / rel;
}

std::vector<int> style_levels(const fs::path& pred_root, const std::string& style) {
  const fs::path dir = pred_root / ("style_" + style);
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(Errc::missing_prediction, dir.string() + " does not exist");
  std::vector<int> out;
  for (const auto& d : fs::directory_iterator(dir)) {
    if (!d.is_directory()) continue;
    const std::string n = d.path().filename().string();
    int level = 0;
    const auto [ptr, err] = std::from_chars(n.data(), n.data() + n.size(), level);
    if (err == std::errc() && ptr == n.data() + n.size() && level > 0) out.push_back(level);
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(Errc::missing_prediction, "no severity directories under " + dir.string());
  return out;
}

EvaluationResult evaluate_predictions(const EvaluateOptions& o) {
  if (o.images.empty()) throw Error(Errc::empty_input, "no images to evaluate");
  if (o.cells.empty() && !o.include_clean) throw Error(Errc::invalid_request, "no cells to evaluate");
  o.protocol.validate();
  std::set<CellId> unique;
  for (const auto& c : o.cells) {
    check_cell(c);
    if (!unique.insert(c).second) {
      throw Error(Errc::invalid_request, "cell " + c.kind + "/" + std::to_string(c.severity) + " listed twice");
    }
  }

  std::vector<CellId> cells;
  if (o.include_clean) cells.push_back({"clean", 0});
  cells.insert(cells.end(), o.cells.begin(), o.cells.end());

  // Completeness first so that no partial result is ever produced.
  std::size_t missing = 0;
  fs::path first_missing;
  for (const auto& rel : o.images) {
    const fs::path gt = ground_truth_path(o.gt_root, rel, o.gt_format);
    if (!fs::exists(gt)) throw Error(Errc::io_error, "missing ground truth " + gt.string());
    for (const auto& c : cells) {
      const fs::path p = prediction_path(o.pred_root, c, rel, o.pred_format);
      if (!fs::exists(p) && missing++ == 0) first_missing = p;
    }
  }
  if (missing > 0) {
    throw Error(Errc::missing_prediction,
                first_missing.string() + (missing > 1 ? " (and " + std::to_string(missing - 1) + " more)" : ""));
  }

  const std::size_t n = o.images.size();
  std::vector<DepthScores> per_image(cells.size() * n);
  std::vector<std::string> errors(n);
  std::vector<Errc> codes(n, Errc::io_error);
  const int threads = o.jobs > 0 ? o.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const DepthMap gt = read_ground_truth(ground_truth_path(o.gt_root, o.images[i], o.gt_format), o.gt_format,
                                            o.gt_scale);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const fs::path p = prediction_path(o.pred_root, cells[c], o.images[i], o.pred_format);
        try {
          per_image[c * n + i] = compute_scores(read_prediction(p, o.pred_format, o.pred_scale), gt, o.protocol);
        } catch (const Error& e) {
          throw Error(e.code(), p.string() + ": " + e.message());
        }
      }
    } catch (const Error& e) {
      errors[i] = e.message();
      codes[i] = e.code();
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) throw Error(codes[i], errors[i]);
  }

  EvaluationResult r;
  r.model_id = o.model_id;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellScores s;
    s.cell = cells[c];
    s.images = n;
    s.scores = aggregate_set(std::span(per_image).subspan(c * n, n));
    if (cells[c].kind == "clean") {
      r.clean = s;
    } else {
      r.cells.push_back(s);
    }
  }
  return r;
}

std::vector<DeeCell> EvaluationResult::dee_cells() const {
  std::vector<DeeCell> out;
  for (const auto& c : cells) out.push_back({model_id, c.cell.kind, c.cell.severity, c.scores.dee});
  return out;
}

double EvaluationResult::clean_dee() const { return clean ? clean->scores.dee : -1.0; }

std::string EvaluationResult::to_csv() const {
  std::string out = "model_id,kind,severity,dee,abs_rel,sq_rel,rmse,rmse_log,d1,d2,d3,images\n";
  auto row = [&](const CellScores& c) {
    const auto& s = c.scores;
    out += csv_line({model_id, c.cell.kind, std::to_string(c.cell.severity), format_double(s.dee),
                     format_double(s.abs_rel), format_double(s.sq_rel), format_double(s.rmse),
                     format_double(s.rmse_log), format_double(s.d1), format_double(s.d2), format_double(s.d3),
                     std::to_string(c.images)});
  };
  if (clean) row(*clean);
  for (const auto& c : cells) row(c);
  return out;
}

}  // namespace depthbench
