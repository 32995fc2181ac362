#include "depthbench/report.hpp"

#include <cmath>
#include <cstdio>

#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"
#include "depthbench/image_io.hpp"

namespace depthbench {

using nlohmann::ordered_json;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, round_to(v, decimals));
  return buf;
}

Category parse_category(const std::string& text) {
  for (auto c : kAllCategories) {
    if (name(c) == text) return c;
  }
  throw Error(Errc::parse_error, "unknown category '" + text + "'");
}

}  // namespace

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

ordered_json ReportDocument::to_json() const {
  const auto& r = report;
  ordered_json j;
  j["schema_version"] = schema_version;

  ordered_json body;
  body["model_id"] = r.model_id;
  body["baseline_id"] = r.baseline_id;
  body["profile"] = std::string(name(r.profile));
  body["clean_dee"] = r.clean_dee;
  body["mce"] = r.mce;
  body["mrr"] = r.mrr;
  body["mdee"] = r.mdee;
  ordered_json kinds = ordered_json::array();
  for (const auto& k : r.kinds) {
    ordered_json o;
    o["kind"] = std::string(name(k.kind));
    o["category"] = std::string(name(category_of(k.kind)));
    o["dee_by_level"] = k.dee_by_level;
    o["mean_dee"] = k.mean_dee;
    o["ce"] = k.ce;
    o["rr"] = k.rr;
    kinds.push_back(std::move(o));
  }
  body["kinds"] = std::move(kinds);
  ordered_json cats = ordered_json::array();
  for (const auto& c : r.categories) {
    ordered_json o;
    o["category"] = std::string(name(c.category));
    o["kind_count"] = c.kind_count;
    o["mce"] = c.mce;
    o["mrr"] = c.mrr;
    o["mdee"] = c.mdee;
    cats.push_back(std::move(o));
  }
  body["categories"] = std::move(cats);
  ordered_json ext = ordered_json::array();
  for (const auto& e : r.external) {
    ordered_json o;
    o["kind"] = e.kind;
    o["dee_by_level"] = e.dee_by_level;
    o["mean_dee"] = e.mean_dee;
    o["rr"] = e.rr;
    ext.push_back(std::move(o));
  }
  body["external"] = std::move(ext);
  j["report"] = std::move(body);

  ordered_json pres;
  pres["mce"] = round_to(r.mce, 1);
  pres["mrr"] = round_to(r.mrr, 1);
  pres["mdee"] = round_to(r.mdee, 3);
  pres["clean_dee"] = round_to(r.clean_dee, 3);
  ordered_json pk = ordered_json::object();
  for (const auto& k : r.kinds) {
    pk[std::string(name(k.kind))] = {{"ce", round_to(k.ce, 1)}, {"rr", round_to(k.rr, 1)}, {"dee", round_to(k.mean_dee, 3)}};
  }
  pres["kinds"] = std::move(pk);
  ordered_json pc = ordered_json::object();
  for (const auto& c : r.categories) {
    pc[std::string(name(c.category))] = {
        {"mce", round_to(c.mce, 1)}, {"mrr", round_to(c.mrr, 1)}, {"mdee", round_to(c.mdee, 3)}};
  }
  pres["categories"] = std::move(pc);
  j["presentation"] = std::move(pres);

  ordered_json prov;
  prov["baseline_source"] = provenance.baseline_source;
  prov["cells_source"] = provenance.cells_source;
  prov["manifest_hash"] = provenance.manifest_hash ? ordered_json(*provenance.manifest_hash) : ordered_json(nullptr);
  prov["protocol"] = provenance.protocol ? *provenance.protocol : ordered_json(nullptr);
  j["provenance"] = std::move(prov);
  return j;
}

ReportDocument ReportDocument::from_json(const ordered_json& doc) {
  try {
    ReportDocument d;
    d.schema_version = doc.at("schema_version").get<int>();
    if (d.schema_version != kReportSchemaVersion) {
      throw Error(Errc::version_mismatch, "report schema_version " + std::to_string(d.schema_version) +
                                              " is not supported (expected " + std::to_string(kReportSchemaVersion) +
                                              ")");
    }
    const auto& b = doc.at("report");
    auto& r = d.report;
    r.model_id = b.at("model_id").get<std::string>();
    r.baseline_id = b.at("baseline_id").get<std::string>();
    r.profile = parse_profile(b.at("profile").get<std::string>());
    r.clean_dee = b.at("clean_dee").get<double>();
    r.mce = b.at("mce").get<double>();
    r.mrr = b.at("mrr").get<double>();
    r.mdee = b.at("mdee").get<double>();
    for (const auto& o : b.at("kinds")) {
      KindResult k;
      k.kind = parse_kind(o.at("kind").get<std::string>());
      k.dee_by_level = o.at("dee_by_level").get<std::vector<double>>();
      k.mean_dee = o.at("mean_dee").get<double>();
      k.ce = o.at("ce").get<double>();
      k.rr = o.at("rr").get<double>();
      r.kinds.push_back(std::move(k));
    }
    for (const auto& o : b.at("categories")) {
      CategoryResult c;
      c.category = parse_category(o.at("category").get<std::string>());
      c.kind_count = o.at("kind_count").get<int>();
      c.mce = o.at("mce").get<double>();
      c.mrr = o.at("mrr").get<double>();
      c.mdee = o.at("mdee").get<double>();
      r.categories.push_back(c);
    }
    for (const auto& o : b.at("external")) {
      ExternalResult e;
      e.kind = o.at("kind").get<std::string>();
      e.dee_by_level = o.at("dee_by_level").get<std::vector<double>>();
      e.mean_dee = o.at("mean_dee").get<double>();
      e.rr = o.at("rr").get<double>();
      r.external.push_back(std::move(e));
    }
    const auto& p = doc.at("provenance");
    d.provenance.baseline_source = p.at("baseline_source").get<std::string>();
    d.provenance.cells_source = p.at("cells_source").get<std::string>();
    if (!p.at("manifest_hash").is_null()) d.provenance.manifest_hash = p.at("manifest_hash").get<std::string>();
    if (!p.at("protocol").is_null()) d.provenance.protocol = p.at("protocol");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, std::string("report: ") + e.what());
  }
}

ReportDocument ReportDocument::parse(const std::string& text) {
  try {
    return from_json(ordered_json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("report: ") + e.what());
  }
}

ReportDocument ReportDocument::load(const std::filesystem::path& path) {
  try {
    return parse(read_text_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

std::string ReportDocument::dump() const { return to_json().dump(2) + "\n"; }

ReportDocument build_report(std::span<const DeeCell> cells, double clean_dee, const BaselineTable& baseline,
                            Profile profile, ReportProvenance provenance) {
  if (baseline.profile() != profile) {
    throw Error(Errc::profile_mismatch, "baseline " + baseline.model_id() + " is for " +
                                            std::string(name(baseline.profile())) + ", report requested " +
                                            std::string(name(profile)));
  }
  ReportDocument d;
  d.report = summarize(cells, baseline, clean_dee);
  d.provenance = std::move(provenance);
  return d;
}

std::string dee_matrix_csv(const RobustnessReport& r) {
  const int levels = level_count(r.profile);
  std::vector<std::string> header{"kind", "category"};
  for (int l = 1; l <= levels; ++l) header.push_back("level_" + std::to_string(l));
  header.push_back("mean");
  std::string out = csv_line(header);
  for (const auto& k : r.kinds) {
    std::vector<std::string> row{std::string(name(k.kind)), std::string(name(category_of(k.kind)))};
    for (double v : k.dee_by_level) row.push_back(format_double(v));
    row.push_back(format_double(k.mean_dee));
    out += csv_line(row);
  }
  return out;
}

std::string kind_scores_csv(const RobustnessReport& r) {
  std::string out = csv_line({"kind", "category", "ce", "rr", "mean_dee"});
  for (const auto& k : r.kinds) {
    out += csv_line({std::string(name(k.kind)), std::string(name(category_of(k.kind))), format_double(k.ce),
                     format_double(k.rr), format_double(k.mean_dee)});
  }
  for (const auto& e : r.external) {
    out += csv_line({e.kind, "external", "", format_double(e.rr), format_double(e.mean_dee)});
  }
  return out;
}

std::string categories_csv(const RobustnessReport& r) {
  std::string out = csv_line({"category", "kinds", "mce", "mrr", "mdee"});
  for (const auto& c : r.categories) {
    out += csv_line({std::string(name(c.category)), std::to_string(c.kind_count), format_double(c.mce),
                     format_double(c.mrr), format_double(c.mdee)});
  }
  out += csv_line({"overall", std::to_string(r.kinds.size()), format_double(r.mce), format_double(r.mrr),
                   format_double(r.mdee)});
  return out;
}

std::string severity_curves_csv(const RobustnessReport& r) {
  std::string out = csv_line({"kind", "severity", "dee"});
  out += csv_line({"clean", "0", format_double(r.clean_dee)});
  for (const auto& k : r.kinds) {
    for (std::size_t l = 0; l < k.dee_by_level.size(); ++l) {
      out += csv_line({std::string(name(k.kind)), std::to_string(l + 1), format_double(k.dee_by_level[l])});
    }
  }
  for (const auto& e : r.external) {
    for (std::size_t l = 0; l < e.dee_by_level.size(); ++l) {
      out += csv_line({e.kind, std::to_string(l + 1), format_double(e.dee_by_level[l])});
    }
  }
  return out;
}

void write_report_bundle(const ReportDocument& doc, const std::filesystem::path& dir) {
  write_text_file(dir / "report.json", doc.dump());
  write_text_file(dir / "dee_matrix.csv", dee_matrix_csv(doc.report));
  write_text_file(dir / "kind_scores.csv", kind_scores_csv(doc.report));
  write_text_file(dir / "categories.csv", categories_csv(doc.report));
  write_text_file(dir / "severity_curves.csv", severity_curves_csv(doc.report));
}

std::string summary_text(const ReportDocument& doc) {
  const auto& r = doc.report;
  std::string out;
  out += "model     " + r.model_id + "\n";
  out += "baseline  " + r.baseline_id + "\n";
  out += "profile   " + std::string(name(r.profile)) + "\n";
  out += "mCE " + fixed(r.mce, 1) + "\n";
  out += "mRR " + fixed(r.mrr, 1) + "\n";
  out += "mDEE " + fixed(r.mdee, 3) + "\n";
  out += "clean DEE " + fixed(r.clean_dee, 3) + "\n";
  for (const auto& c : r.categories) {
    char line[160];
    std::snprintf(line, sizeof line, "%-18s mCE %6s  mRR %6s  mDEE %s\n", std::string(name(c.category)).c_str(),
                  fixed(c.mce, 1).c_str(), fixed(c.mrr, 1).c_str(), fixed(c.mdee, 3).c_str());
    out += line;
  }
  for (const auto& k : r.kinds) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-18s CE %6s  RR %6s  DEE %s\n", std::string(name(k.kind)).c_str(),
                  fixed(k.ce, 1).c_str(), fixed(k.rr, 1).c_str(), fixed(k.mean_dee, 3).c_str());
    out += line;
  }
  for (const auto& e : r.external) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-18s RR %6s  DEE %s\n", e.kind.c_str(), fixed(e.rr, 1).c_str(),
                  fixed(e.mean_dee, 3).c_str());
    out += line;
  }
  return out;
}

}  // namespace depthbench
