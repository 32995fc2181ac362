#include "depthbench/severity_table.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>

#include "depthbench/error.hpp"
#include "depthbench/rng.hpp"

namespace depthbench {

namespace {

using D = Direction;

constexpr ParamSchema kGaussian[] = {{"sigma", D::increasing}};
constexpr ParamSchema kShot[] = {{"lambda", D::decreasing}};
constexpr ParamSchema kImpulse[] = {{"amount", D::increasing}};
constexpr ParamSchema kIso[] = {{"lambda", D::decreasing}, {"chroma_sigma", D::increasing}};
constexpr ParamSchema kDefocus[] = {{"radius", D::increasing}, {"alias_sigma", D::increasing}};
constexpr ParamSchema kGlass[] = {{"sigma", D::increasing}, {"delta", D::increasing}, {"iterations", D::free}};
constexpr ParamSchema kMotion[] = {{"radius", D::increasing}, {"sigma", D::increasing}};
constexpr ParamSchema kZoom[] = {{"z_max", D::increasing}, {"step", D::free}};
constexpr ParamSchema kFog[] = {{"intensity", D::increasing}, {"wibbledecay", D::decreasing}};
constexpr ParamSchema kFrost[] = {{"image_weight", D::decreasing}, {"frost_weight", D::increasing}};
constexpr ParamSchema kSnow[] = {{"mean", D::increasing},        {"std", D::free},
                                 {"zoom", D::free},              {"threshold", D::free},
                                 {"blur_radius", D::increasing}, {"blur_sigma", D::increasing},
                                 {"image_weight", D::decreasing}};
constexpr ParamSchema kBrightness[] = {{"shift", D::increasing}};
constexpr ParamSchema kContrast[] = {{"factor", D::decreasing}};
constexpr ParamSchema kDark[] = {{"scale", D::decreasing},
                                 {"gamma", D::increasing},
                                 {"shot_lambda", D::decreasing},
                                 {"read_sigma", D::increasing}};
constexpr ParamSchema kElastic[] = {{"alpha", D::increasing}, {"sigma", D::decreasing}, {"affine", D::increasing}};
constexpr ParamSchema kQuant[] = {{"bits", D::decreasing}};
constexpr ParamSchema kPixelate[] = {{"factor", D::decreasing}};
constexpr ParamSchema kJpeg[] = {{"quality", D::decreasing}};

using Rows = std::initializer_list<std::initializer_list<double>>;

std::vector<LevelParams> make_levels(CorruptionKind kind, Rows rows) {
  const auto schema = parameter_schema(kind);
  std::vector<LevelParams> out;
  for (const auto& row : rows) {
    std::vector<std::pair<std::string, double>> values;
    std::size_t i = 0;
    for (double v : row) values.emplace_back(std::string(schema[i++].name), v);
    out.emplace_back(std::move(values));
  }
  return out;
}

std::string level_label(CorruptionKind kind, std::size_t level) {
  return std::string(name(kind)) + " level " + std::to_string(level);
}

}  // namespace

std::span<const ParamSchema> parameter_schema(CorruptionKind kind) {
  switch (kind) {
    case CorruptionKind::gaussian_noise: return kGaussian;
    case CorruptionKind::shot_noise: return kShot;
    case CorruptionKind::impulse_noise: return kImpulse;
    case CorruptionKind::iso_noise: return kIso;
    case CorruptionKind::defocus_blur: return kDefocus;
    case CorruptionKind::glass_blur: return kGlass;
    case CorruptionKind::motion_blur: return kMotion;
    case CorruptionKind::zoom_blur: return kZoom;
    case CorruptionKind::fog: return kFog;
    case CorruptionKind::frost: return kFrost;
    case CorruptionKind::snow: return kSnow;
    case CorruptionKind::brightness: return kBrightness;
    case CorruptionKind::contrast: return kContrast;
    case CorruptionKind::dark: return kDark;
    case CorruptionKind::elastic_transform: return kElastic;
    case CorruptionKind::color_quant: return kQuant;
    case CorruptionKind::pixelate: return kPixelate;
    case CorruptionKind::jpeg_compress: return kJpeg;
  }
  throw Error(Errc::unsupported_kind, "no parameter schema for kind id " + std::to_string(static_cast<int>(kind)));
}

double LevelParams::get(std::string_view name) const {
  for (const auto& [k, v] : values_) {
    if (k == name) return v;
  }
  throw Error(Errc::invalid_parameter, "missing severity parameter '" + std::string(name) + "'");
}

int LevelParams::get_int(std::string_view name) const { return static_cast<int>(std::lround(get(name))); }

void LevelParams::set(std::string_view name, double value) {
  for (auto& [k, v] : values_) {
    if (k == name) {
      v = value;
      return;
    }
  }
  values_.emplace_back(std::string(name), value);
}

SeverityTable SeverityTable::defaults() {
  using K = CorruptionKind;
  SeverityTable t;
  t.set_levels(K::gaussian_noise, make_levels(K::gaussian_noise, {{.08}, {.12}, {.18}, {.26}, {.38}}));
  t.set_levels(K::shot_noise, make_levels(K::shot_noise, {{60}, {25}, {12}, {5}, {3}}));
  t.set_levels(K::impulse_noise, make_levels(K::impulse_noise, {{.03}, {.06}, {.09}, {.17}, {.27}}));
  t.set_levels(K::iso_noise,
               make_levels(K::iso_noise, {{40, .04}, {30, .06}, {20, .09}, {12, .13}, {8, .19}}));
  t.set_levels(K::defocus_blur,
               make_levels(K::defocus_blur, {{3, .1}, {4, .5}, {6, .5}, {8, .5}, {10, .5}}));
  t.set_levels(K::glass_blur, make_levels(K::glass_blur, {{.7, 1, 2}, {.9, 2, 1}, {1, 2, 3}, {1.1, 3, 2}, {1.5, 4, 2}}));
  t.set_levels(K::motion_blur, make_levels(K::motion_blur, {{10, 3}, {15, 5}, {15, 8}, {15, 12}, {20, 15}}));
  t.set_levels(K::zoom_blur,
               make_levels(K::zoom_blur, {{1.11, .01}, {1.16, .01}, {1.21, .01}, {1.26, .01}, {1.31, .01}}));
  t.set_levels(K::fog, make_levels(K::fog, {{1.5, 2}, {2, 2}, {2.5, 1.7}, {2.5, 1.5}, {3, 1.4}}));
  t.set_levels(K::frost, make_levels(K::frost, {{1, .4}, {.8, .6}, {.7, .7}, {.65, .7}, {.6, .75}}));
  t.set_levels(K::snow, make_levels(K::snow, {{.1, .3, 3, .5, 10, 4, .8},
                                              {.2, .3, 2, .5, 12, 4, .7},
                                              {.55, .3, 4, .9, 12, 8, .7},
                                              {.55, .3, 4.5, .85, 12, 8, .65},
                                              {.55, .3, 2.5, .85, 12, 12, .55}}));
  t.set_levels(K::brightness, make_levels(K::brightness, {{.1}, {.2}, {.3}, {.4}, {.5}}));
  t.set_levels(K::contrast, make_levels(K::contrast, {{.4}, {.3}, {.2}, {.1}, {.05}}));
  t.set_levels(K::dark, make_levels(K::dark, {{.6, 2, 600, .008},
                                              {.5, 2, 250, .012},
                                              {.4, 2, 120, .018},
                                              {.3, 2, 50, .026},
                                              {.2, 2, 30, .038}}));
  t.set_levels(K::elastic_transform, make_levels(K::elastic_transform, {{40, 4, .005},
                                                                        {55, 4, .0075},
                                                                        {70, 4, .01},
                                                                        {85, 4, .0125},
                                                                        {100, 4, .015}}));
  t.set_levels(K::color_quant, make_levels(K::color_quant, {{5}, {4}, {3}, {2}, {1}}));
  t.set_levels(K::pixelate, make_levels(K::pixelate, {{.6}, {.5}, {.4}, {.3}, {.25}}));
  t.set_levels(K::jpeg_compress, make_levels(K::jpeg_compress, {{25}, {18}, {15}, {10}, {7}}));
  return t;
}

SeverityTable SeverityTable::from_json(const nlohmann::json& doc) {
  SeverityTable t = defaults();
  t.apply_overrides(doc);
  return t;
}

SeverityTable SeverityTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open severity table " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, "severity table " + path.string() + ": " + e.what());
  }
  return from_json(doc);
}

void SeverityTable::apply_overrides(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(Errc::parse_error, "severity table must be a JSON object keyed by kind");
  for (const auto& [key, rows] : doc.items()) {
    const CorruptionKind kind = parse_kind(key);
    if (!rows.is_array() || rows.empty()) {
      throw Error(Errc::parse_error, "severity table entry '" + key + "' must be a non-empty array of level records");
    }
    const auto schema = parameter_schema(kind);
    std::vector<LevelParams> levels;
    for (const auto& row : rows) {
      if (!row.is_object()) throw Error(Errc::parse_error, "level records of '" + key + "' must be objects");
      std::vector<std::pair<std::string, double>> values;
      for (const auto& p : schema) {
        const auto it = row.find(std::string(p.name));
        if (it == row.end() || !it->is_number()) {
          throw Error(Errc::invalid_parameter, "'" + key + "' level record lacks numeric '" + std::string(p.name) + "'");
        }
        values.emplace_back(std::string(p.name), it->get<double>());
      }
      if (row.size() != schema.size()) {
        throw Error(Errc::invalid_parameter, "'" + key + "' level record has unknown parameters");
      }
      levels.emplace_back(std::move(values));
    }
    cells_[static_cast<std::size_t>(kind)] = std::move(levels);
  }
  validate();
}

int SeverityTable::levels(CorruptionKind kind) const noexcept {
  return static_cast<int>(cells_[static_cast<std::size_t>(kind)].size());
}

const LevelParams& SeverityTable::params(CorruptionKind kind, int level) const {
  const auto& cell = cells_[static_cast<std::size_t>(kind)];
  if (level < 1 || level > static_cast<int>(cell.size())) {
    throw Error(Errc::invalid_parameter, "severity " + std::to_string(level) + " out of range [1," +
                                             std::to_string(cell.size()) + "] for " + std::string(name(kind)));
  }
  return cell[static_cast<std::size_t>(level - 1)];
}

void SeverityTable::set_levels(CorruptionKind kind, std::vector<LevelParams> levels) {
  cells_[static_cast<std::size_t>(kind)] = std::move(levels);
}

void SeverityTable::validate() const {
  for (auto kind : kAllKinds) {
    const auto& cell = cells_[static_cast<std::size_t>(kind)];
    if (cell.empty()) throw Error(Errc::invalid_parameter, "severity table has no levels for " + std::string(name(kind)));
    const auto schema = parameter_schema(kind);
    for (std::size_t l = 0; l < cell.size(); ++l) {
      for (const auto& p : schema) {
        if (!std::isfinite(cell[l].get(p.name))) {
          throw Error(Errc::invalid_parameter, level_label(kind, l + 1) + ": '" + std::string(p.name) + "' is not finite");
        }
      }
      if (l == 0) continue;
      if (cell[l] == cell[l - 1]) {
        throw Error(Errc::invalid_parameter, level_label(kind, l + 1) + " repeats the previous level");
      }
      for (const auto& p : schema) {
        const double prev = cell[l - 1].get(p.name);
        const double cur = cell[l].get(p.name);
        if ((p.direction == Direction::increasing && cur < prev) ||
            (p.direction == Direction::decreasing && cur > prev)) {
          throw Error(Errc::invalid_parameter, level_label(kind, l + 1) + ": '" + std::string(p.name) +
                                                   "' moves against its declared direction");
        }
      }
    }
  }
}

nlohmann::json SeverityTable::to_json() const {
  nlohmann::json doc = nlohmann::json::object();
  for (auto kind : kAllKinds) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& level : cells_[static_cast<std::size_t>(kind)]) {
      nlohmann::json row = nlohmann::json::object();
      for (const auto& [k, v] : level.values()) row[k] = v;
      rows.push_back(std::move(row));
    }
    doc[std::string(name(kind))] = std::move(rows);
  }
  return doc;
}

std::string SeverityTable::canonical() const { return to_json().dump(); }

std::uint64_t SeverityTable::hash() const { return fnv1a64(canonical()); }

}  // namespace depthbench
