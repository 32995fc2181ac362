#include "depthbench/manifest.hpp"

#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"
#include "depthbench/image_io.hpp"
#include "depthbench/rng.hpp"

namespace depthbench {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::uint64_t parse_hex64(const json& v) {
  const auto s = v.get<std::string>();
  if (s.size() != 16 || s.find_first_not_of("0123456789abcdef") != std::string::npos) {
    throw Error(Errc::parse_error, "expected 16 hex digits, got '" + s + "'");
  }
  return std::stoull(s, nullptr, 16);
}

}  // namespace

std::string output_path_for(const std::string& relative_path, CorruptionKind kind, int severity) {
  fs::path rel(relative_path);
  rel.replace_extension(".png");
  return std::string(name(kind)) + "/" + std::to_string(severity) + "/" + rel.generic_string();
}

ordered_json DatasetManifest::to_json() const {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["base_dataset"] = base_dataset;
  j["profile"] = std::string(name(profile));
  j["seed_root"] = seed_root;
  j["clean_dir"] = clean_dir;
  ordered_json ks = ordered_json::array();
  for (auto k : kinds) ks.push_back(std::string(name(k)));
  j["kinds"] = ks;
  j["severities"] = severities;
  j["image_count"] = image_count;
  j["severity_table_hash"] = hex64(severity_table_hash);
  j["frost_asset_hash"] = hex64(frost_asset_hash);
  j["frost_source"] = frost_source;
  j["frost_assets"] = frost_assets;
  ordered_json es = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json o;
    o["relative_path"] = e.relative_path;
    o["kind"] = std::string(name(e.kind));
    o["severity"] = e.severity;
    o["derived_seed"] = hex64(e.derived_seed);
    o["output_path"] = e.output_path;
    o["content_hash"] = e.content_hash ? ordered_json(hex64(*e.content_hash)) : ordered_json(nullptr);
    es.push_back(std::move(o));
  }
  j["entries"] = std::move(es);
  ordered_json fs_ = ordered_json::array();
  for (const auto& f : failures) {
    fs_.push_back({{"relative_path", f.relative_path}, {"kind", f.kind}, {"severity", f.severity}, {"message", f.message}});
  }
  j["failures"] = std::move(fs_);
  return j;
}

DatasetManifest DatasetManifest::from_json(const json& doc) {
  try {
    DatasetManifest m;
    m.schema_version = doc.at("schema_version").get<int>();
    if (m.schema_version != kManifestSchemaVersion) {
      throw Error(Errc::version_mismatch, "manifest schema_version " + std::to_string(m.schema_version) +
                                              " is not supported (expected " +
                                              std::to_string(kManifestSchemaVersion) + ")");
    }
    m.base_dataset = doc.at("base_dataset").get<std::string>();
    m.profile = parse_profile(doc.at("profile").get<std::string>());
    m.seed_root = doc.at("seed_root").get<std::uint64_t>();
    m.clean_dir = doc.at("clean_dir").get<std::string>();
    for (const auto& k : doc.at("kinds")) m.kinds.push_back(parse_kind(k.get<std::string>()));
    m.severities = doc.at("severities").get<std::vector<int>>();
    m.image_count = doc.at("image_count").get<std::size_t>();
    m.severity_table_hash = parse_hex64(doc.at("severity_table_hash"));
    m.frost_asset_hash = parse_hex64(doc.at("frost_asset_hash"));
    m.frost_source = doc.at("frost_source").get<std::string>();
    m.frost_assets = doc.at("frost_assets").get<std::string>();
    m.entries.reserve(doc.at("entries").size());
    for (const auto& o : doc.at("entries")) {
      ManifestEntry e;
      e.relative_path = o.at("relative_path").get<std::string>();
      e.kind = parse_kind(o.at("kind").get<std::string>());
      e.severity = o.at("severity").get<int>();
      e.derived_seed = parse_hex64(o.at("derived_seed"));
      e.output_path = o.at("output_path").get<std::string>();
      if (!o.at("content_hash").is_null()) e.content_hash = parse_hex64(o.at("content_hash"));
      m.entries.push_back(std::move(e));
    }
    for (const auto& o : doc.at("failures")) {
      m.failures.push_back({o.at("relative_path").get<std::string>(), o.at("kind").get<std::string>(),
                            o.at("severity").get<int>(), o.at("message").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(Errc::parse_error, std::string("manifest: ") + e.what());
  }
}

std::string DatasetManifest::dump() const { return to_json().dump(1) + "\n"; }

std::uint64_t DatasetManifest::hash() const { return fnv1a64(dump()); }

void DatasetManifest::save(const fs::path& path) const { write_text_file(path, dump()); }

DatasetManifest DatasetManifest::load(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, path.string() + ": " + e.what());
  }
  try {
    return from_json(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

}  // namespace depthbench
