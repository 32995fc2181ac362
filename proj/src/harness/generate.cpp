#include "depthbench/generate.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "depthbench/corruptions.hpp"
#include "depthbench/directory_frost.hpp"
#include "depthbench/error.hpp"
#include "depthbench/image_io.hpp"
#include "depthbench/rng.hpp"

namespace depthbench {

namespace fs = std::filesystem;

namespace {

void check_request(const GenerateOptions& o, const std::vector<int>& severities) {
  if (o.kinds.empty()) throw Error(Errc::invalid_request, "no corruption kinds requested");
  std::set<CorruptionKind> seen;
  for (auto k : o.kinds) {
    if (static_cast<int>(k) >= kKindCount) throw Error(Errc::unsupported_kind, "unknown kind id");
    if (!profile_has_kind(o.profile, k)) {
      throw Error(Errc::invalid_request,
                  std::string(name(k)) + " is not part of profile " + std::string(name(o.profile)));
    }
    if (!seen.insert(k).second) throw Error(Errc::invalid_request, "kind " + std::string(name(k)) + " listed twice");
  }
  std::set<int> levels;
  for (int s : severities) {
    if (s < 1 || s > level_count(o.profile)) {
      throw Error(Errc::invalid_request, "severity " + std::to_string(s) + " outside profile " +
                                             std::string(name(o.profile)));
    }
    if (!levels.insert(s).second) throw Error(Errc::invalid_request, "severity listed twice");
  }
  for (auto k : o.kinds) {
    for (int s : severities) {
      if (s > o.table.levels(k)) {
        throw Error(Errc::invalid_request, "severity table has no level " + std::to_string(s) + " for " +
                                               std::string(name(k)));
      }
    }
  }
}

bool uses_frost(const std::vector<CorruptionKind>& kinds) {
  return std::find(kinds.begin(), kinds.end(), CorruptionKind::frost) != kinds.end();
}

struct FrostChoice {
  std::unique_ptr<DirectoryFrost> owned;
  const FrostSource* source = nullptr;
  std::string description = "none";
  std::uint64_t hash = 0;
  std::string assets;
};

FrostChoice choose_frost(bool needed, const std::optional<fs::path>& assets) {
  FrostChoice f;
  if (!needed) return f;
  if (assets) {
    f.owned = std::make_unique<DirectoryFrost>(*assets);
    f.source = f.owned.get();
    f.assets = fs::absolute(*assets).lexically_normal().generic_string();
  } else {
    f.source = &ProceduralFrost::instance();
  }
  f.description = f.source->description();
  f.hash = f.source->identity_hash();
  return f;
}

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

}  // namespace

std::vector<ManifestEntry> plan_entries(const std::vector<std::string>& images, const std::vector<CorruptionKind>& kinds,
                                        const std::vector<int>& severities, std::uint64_t seed_root) {
  std::vector<CorruptionKind> ks = kinds;
  std::sort(ks.begin(), ks.end());
  std::vector<int> ss = severities;
  std::sort(ss.begin(), ss.end());
  std::vector<ManifestEntry> out;
  out.reserve(images.size() * ks.size() * ss.size());
  for (auto k : ks) {
    for (int s : ss) {
      for (const auto& rel : images) {
        out.push_back({rel, k, s, derive_seed(seed_root, rel, k, s), output_path_for(rel, k, s), std::nullopt});
      }
    }
  }
  return out;
}

GenerateResult generate_dataset(const GenerateOptions& o) {
  std::vector<int> severities = o.severities;
  if (severities.empty()) {
    severities.resize(static_cast<std::size_t>(level_count(o.profile)));
    std::iota(severities.begin(), severities.end(), 1);
  }
  check_request(o, severities);
  std::sort(severities.begin(), severities.end());

  const auto images = list_images(o.clean_dir);
  if (images.empty()) throw Error(Errc::empty_input, "no PNG or JPEG images under " + o.clean_dir.string());

  GenerateResult result;
  DatasetManifest& m = result.manifest;
  m.base_dataset = o.base_dataset;
  if (m.base_dataset.empty()) {
    const auto norm = fs::absolute(o.clean_dir).lexically_normal();
    m.base_dataset = (norm.has_filename() ? norm : norm.parent_path()).filename().string();
  }
  m.profile = o.profile;
  m.seed_root = o.seed_root;
  m.clean_dir = fs::absolute(o.clean_dir).lexically_normal().generic_string();
  m.kinds = o.kinds;
  std::sort(m.kinds.begin(), m.kinds.end());
  m.severities = severities;
  m.severity_table_hash = o.table.hash();
  m.image_count = images.size();
  m.entries = plan_entries(images, m.kinds, severities, o.seed_root);

  std::set<std::string> outputs;
  for (const auto& e : m.entries) {
    if (!outputs.insert(e.output_path).second) {
      throw Error(Errc::invalid_request, "two clean images map to output " + e.output_path);
    }
  }

  const FrostChoice frost = choose_frost(uses_frost(m.kinds), o.frost_assets);
  m.frost_source = frost.description;
  m.frost_asset_hash = frost.hash;
  m.frost_assets = frost.assets;
  if (o.plan_only) return result;

  // Entry index of (kind slot, severity slot, image) in canonical order.
  const std::size_t n_img = images.size();
  const std::size_t per_kind = severities.size() * n_img;
  std::vector<std::vector<ManifestFailure>> failures(n_img);
  std::vector<std::uint8_t> wrote(m.entries.size(), 0);
  std::size_t done = 0;

  const int threads = thread_count(o.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < n_img; ++i) {
    ImageBuffer clean;
    std::string load_error;
    try {
      clean = read_image(o.clean_dir / images[i]);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    for (std::size_t ki = 0; ki < m.kinds.size(); ++ki) {
      for (std::size_t si = 0; si < severities.size(); ++si) {
        ManifestEntry& entry = m.entries[ki * per_kind + si * n_img + i];
        try {
          if (!load_error.empty()) throw Error(Errc::io_error, load_error);
          const ImageBuffer out =
              apply_corruption(clean, {entry.kind, entry.severity, entry.derived_seed}, o.table, frost.source);
          const auto bytes = to_bytes(out);
          const std::uint64_t h = fnv1a64(bytes);
          const fs::path target = o.out_dir / entry.output_path;
          bool same = false;
          std::error_code ec;
          if (fs::exists(target, ec)) {
            try {
              same = content_hash(read_image(target)) == h;
            } catch (const Error&) {
              same = false;
            }
          }
          if (!same) {
            write_binary_file(target, encode_png_rgb8(bytes, out.width(), out.height()));
            wrote[ki * per_kind + si * n_img + i] = 1;
          }
          entry.content_hash = h;
        } catch (const std::exception& e) {
          failures[i].push_back({entry.relative_path, std::string(name(entry.kind)), entry.severity, e.what()});
        }
      }
    }
    if (o.progress) {
#pragma omp critical(depthbench_generate_progress)
      o.progress(++done, n_img);
    }
  }

  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    if (!m.entries[i].content_hash) continue;
    (wrote[i] ? result.written : result.unchanged) += 1;
  }
  // Failure records follow the clean-image order, then kind and severity.
  for (auto& f : failures) {
    for (auto& x : f) m.failures.push_back(std::move(x));
  }
  write_text_file(o.out_dir / kSeverityTableFile, o.table.to_json().dump(2) + "\n");
  m.save(o.out_dir / kManifestFile);
  return result;
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k >= n) return idx;
  DeterministicRng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n - i));
    std::swap(idx[i], idx[std::min(j, n - 1)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

VerifyResult verify_dataset(const VerifyOptions& o) {
  const DatasetManifest m = DatasetManifest::load(o.manifest_path);
  const fs::path root = o.manifest_path.parent_path();
  const SeverityTable table = SeverityTable::load(root / kSeverityTableFile);
  if (table.hash() != m.severity_table_hash) {
    throw Error(Errc::invalid_request, "severity table in " + root.string() + " does not match the manifest hash");
  }
  const FrostChoice frost = choose_frost(uses_frost(m.kinds), m.frost_assets.empty()
                                                                  ? std::nullopt
                                                                  : std::optional<fs::path>(m.frost_assets));
  if (frost.hash != m.frost_asset_hash) {
    throw Error(Errc::missing_asset, "frost assets do not match the manifest hash");
  }
  const fs::path clean_dir = o.clean_dir ? *o.clean_dir : fs::path(m.clean_dir);

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < m.entries.size(); ++i) {
    if (m.entries[i].content_hash) candidates.push_back(i);
  }
  const auto picks = sample_indices(candidates.size(), o.sample == 0 ? candidates.size() : o.sample, m.hash());

  std::vector<std::string> problems(picks.size());
  const int threads = thread_count(o.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t p = 0; p < picks.size(); ++p) {
    const ManifestEntry& e = m.entries[candidates[picks[p]]];
    try {
      if (e.derived_seed != derive_seed(m.seed_root, e.relative_path, e.kind, e.severity)) {
        problems[p] = e.output_path + ": derived seed differs from the recorded one";
        continue;
      }
      const ImageBuffer out = apply_corruption(read_image(clean_dir / e.relative_path),
                                               {e.kind, e.severity, e.derived_seed}, table, frost.source);
      const std::uint64_t regenerated = content_hash(out);
      if (regenerated != *e.content_hash) {
        problems[p] = e.output_path + ": regenerated hash " + hex64(regenerated) + " != manifest " +
                      hex64(*e.content_hash);
        continue;
      }
      const std::uint64_t on_disk = content_hash(read_image(root / e.output_path));
      if (on_disk != *e.content_hash) {
        problems[p] = e.output_path + ": file hash " + hex64(on_disk) + " != manifest " + hex64(*e.content_hash);
      }
    } catch (const std::exception& ex) {
      problems[p] = e.output_path + ": " + ex.what();
    }
  }

  VerifyResult r;
  r.checked = picks.size();
  for (auto& s : problems) {
    if (!s.empty()) r.problems.push_back(std::move(s));
  }
  return r;
}

}  // namespace depthbench
