#include "depthbench/config.hpp"

#include <set>
#include <string>

#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"

namespace depthbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw Error(Errc::invalid_parameter, "unknown key '" + key + "' in " + where);
  }
}

const json& object_at(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_object()) throw Error(Errc::invalid_parameter, std::string(key) + " must be an object");
  return v;
}

double number_at(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw Error(Errc::invalid_parameter, std::string(key) + " must be a number");
  return v.get<double>();
}

std::uint64_t parse_seed(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const auto seed = std::stoull(s, &used, 0);
      if (used == s.size()) return seed;
    } catch (const std::exception&) {
    }
  }
  throw Error(Errc::invalid_parameter, "seed_root must be a non-negative integer");
}

fs::path resolve(const fs::path& base, const json& v, const char* key) {
  if (!v.is_string()) throw Error(Errc::invalid_parameter, std::string(key) + " must be a path string");
  const fs::path p = v.get<std::string>();
  return p.is_absolute() ? p : base / p;
}

void read_depth_source(const json& doc, const char* key, DepthFormat& format, double& scale) {
  const json& d = object_at(doc, key);
  reject_unknown(d, {"format", "scale"}, key);
  if (d.contains("format")) format = parse_depth_format(d.at("format").get<std::string>());
  if (d.contains("scale")) scale = number_at(d, "scale");
  if (!(scale > 0.0)) throw Error(Errc::invalid_parameter, std::string(key) + ".scale must be positive");
}

}  // namespace

Config Config::defaults(Profile profile) {
  Config c;
  c.profile = profile;
  if (profile == Profile::indoor4) {
    c.protocol = EvalProtocol::nyu();
    c.gt_scale = 1000.0;
    c.pred_scale = 1000.0;
  }
  return c;
}

nlohmann::ordered_json protocol_to_json(const EvalProtocol& p) {
  nlohmann::ordered_json j;
  j["min_depth"] = p.min_depth;
  j["max_depth"] = p.max_depth;
  if (p.use_crop) {
    j["crop"] = {p.crop.top, p.crop.bottom, p.crop.left, p.crop.right};
  } else {
    j["crop"] = nullptr;
  }
  j["median_scaling"] = p.median_scaling;
  j["resize_prediction"] = p.resize_prediction;
  return j;
}

EvalProtocol protocol_from_json(const json& doc, const EvalProtocol& fallback) {
  if (!doc.is_object()) throw Error(Errc::invalid_parameter, "protocol must be an object");
  reject_unknown(doc, {"preset", "min_depth", "max_depth", "crop", "median_scaling", "resize_prediction"}, "protocol");
  EvalProtocol p = fallback;
  if (doc.contains("preset")) {
    const auto preset = doc.at("preset").get<std::string>();
    if (preset == "kitti") {
      p = EvalProtocol::kitti();
    } else if (preset == "nyu") {
      p = EvalProtocol::nyu();
    } else {
      throw Error(Errc::invalid_parameter, "unknown protocol preset '" + preset + "'");
    }
  }
  if (doc.contains("min_depth")) p.min_depth = number_at(doc, "min_depth");
  if (doc.contains("max_depth")) p.max_depth = number_at(doc, "max_depth");
  if (doc.contains("crop")) {
    const json& c = doc.at("crop");
    if (c.is_null()) {
      p.use_crop = false;
    } else if (c.is_array() && c.size() == 4) {
      p.use_crop = true;
      p.crop = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>(), c[3].get<double>()};
    } else {
      throw Error(Errc::invalid_parameter, "protocol.crop must be null or [top, bottom, left, right]");
    }
  }
  if (doc.contains("median_scaling")) p.median_scaling = doc.at("median_scaling").get<bool>();
  if (doc.contains("resize_prediction")) p.resize_prediction = doc.at("resize_prediction").get<bool>();
  p.validate();
  return p;
}

Config Config::from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw Error(Errc::invalid_parameter, "config must be a JSON object");
  reject_unknown(doc,
                 {"profile", "seed_root", "severity_table", "protocol", "ground_truth", "predictions", "baseline",
                  "frost_assets", "jobs"},
                 "config");
  try {
    Config c = defaults(doc.contains("profile") ? parse_profile(doc.at("profile").get<std::string>())
                                                : Profile::outdoor5);
    if (doc.contains("seed_root")) c.seed_root = parse_seed(doc.at("seed_root"));
    if (doc.contains("severity_table")) {
      const json& t = doc.at("severity_table");
      c.table = t.is_string() ? SeverityTable::load(resolve(base_dir, t, "severity_table")) : SeverityTable::from_json(t);
    }
    if (doc.contains("protocol")) c.protocol = protocol_from_json(doc.at("protocol"), c.protocol);
    if (doc.contains("ground_truth")) read_depth_source(doc, "ground_truth", c.gt_format, c.gt_scale);
    if (doc.contains("predictions")) read_depth_source(doc, "predictions", c.pred_format, c.pred_scale);
    if (doc.contains("baseline")) c.baseline = resolve(base_dir, doc.at("baseline"), "baseline");
    if (doc.contains("frost_assets")) c.frost_assets = resolve(base_dir, doc.at("frost_assets"), "frost_assets");
    if (doc.contains("jobs")) {
      c.jobs = doc.at("jobs").get<int>();
      if (c.jobs < 0) throw Error(Errc::invalid_parameter, "jobs must be non-negative");
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_parameter, std::string("config: ") + e.what());
  }
}

Config Config::load(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, path.string() + ": " + e.what());
  }
  try {
    return from_json(doc, path.parent_path());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

fs::path default_baseline_path(Profile profile) {
  const fs::path root = DEPTHBENCH_DATA_DIR;
  return root / "baselines" /
         (profile == Profile::outdoor5 ? "kitti_c_monodepth2_r18.csv" : "nyudepth2_c_adabins_eb5.csv");
}

}  // namespace depthbench
