#include "depthbench/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "depthbench/config.hpp"
#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"
#include "depthbench/evaluate.hpp"
#include "depthbench/generate.hpp"
#include "depthbench/histogram.hpp"
#include "depthbench/image_io.hpp"
#include "depthbench/report.hpp"
#include "depthbench/rng.hpp"

namespace depthbench::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool is_stdout(const std::optional<std::string>& out) { return out && *out == "-"; }

std::string absolute_string(const std::string& p) { return fs::absolute(p).lexically_normal().string(); }

// Flags that correspond to config keys are merged into the document so that
// profile-dependent defaults are derived once, in Config::from_json.
Config resolve_config(const Plan& p, std::optional<Profile> forced_profile = std::nullopt) {
  std::optional<fs::path> path;
  if (p.config) {
    path = *p.config;
  } else if (const char* env = std::getenv(kConfigEnvVar); env && *env) {
    path = env;
  }
  json doc = json::object();
  fs::path base = fs::current_path();
  if (path) {
    try {
      doc = json::parse(read_text_file(*path));
    } catch (const json::parse_error& e) {
      throw Error(Errc::parse_error, path->string() + ": " + e.what());
    }
    if (!doc.is_object()) throw Error(Errc::invalid_parameter, path->string() + ": config must be a JSON object");
    base = fs::absolute(*path).parent_path();
  }
  if (forced_profile) doc["profile"] = std::string(name(*forced_profile));
  if (p.profile) doc["profile"] = *p.profile;
  if (p.seed) doc["seed_root"] = *p.seed;
  if (p.table) doc["severity_table"] = absolute_string(*p.table);
  if (p.frost_dir) doc["frost_assets"] = absolute_string(*p.frost_dir);
  if (p.baseline) doc["baseline"] = absolute_string(*p.baseline);
  if (p.jobs) doc["jobs"] = *p.jobs;
  if (p.protocol) {
    if (!doc.contains("protocol")) doc["protocol"] = json::object();
    doc["protocol"]["preset"] = *p.protocol;
  }
  auto depth_source = [&](const char* key, const std::optional<std::string>& format, const std::optional<double>& scale) {
    if (!format && !scale) return;
    if (!doc.contains(key)) doc[key] = json::object();
    if (format) doc[key]["format"] = *format;
    if (scale) doc[key]["scale"] = *scale;
  };
  depth_source("ground_truth", p.gt_format, p.gt_scale);
  depth_source("predictions", p.pred_format, p.pred_scale);
  try {
    return Config::from_json(doc, base);
  } catch (const Error& e) {
    throw Error(e.code(), (path ? path->string() + ": " : std::string()) + e.message());
  }
}

void emit(const std::optional<std::string>& out, const std::string& data, std::ostream& os, std::ostream& err,
          const char* what) {
  if (!out || *out == "-") {
    os << data;
    return;
  }
  write_text_file(*out, data);
  err << what << " written to " << *out << "\n";
}

std::vector<CorruptionKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<CorruptionKind> out;
  for (const auto& n : names) out.push_back(parse_kind(n));
  return out;
}

int do_corrupt(const Plan& p, std::ostream& out, std::ostream& err) {
  const Config cfg = resolve_config(p);
  GenerateOptions o;
  o.clean_dir = p.in;
  o.out_dir = p.out && *p.out != "-" ? fs::path(*p.out) : fs::path();
  o.kinds = p.kinds.empty() ? profile_kinds(cfg.profile) : parse_kinds(p.kinds);
  o.severities = p.severities;
  o.profile = cfg.profile;
  o.seed_root = cfg.seed_root;
  o.table = cfg.table;
  o.frost_assets = cfg.frost_assets;
  o.base_dataset = p.name;
  o.jobs = cfg.jobs;
  o.plan_only = p.dry_run;
  std::size_t last_decile = 0;
  o.progress = [&](std::size_t done, std::size_t total) {
    const std::size_t decile = done * 10 / total;
    if (decile != last_decile || done == total) {
      last_decile = decile;
      err << "corrupt: " << done << "/" << total << " images\n";
    }
  };
  const GenerateResult r = generate_dataset(o);
  const auto& m = r.manifest;
  if (p.dry_run) {
    if (is_stdout(p.out)) out << m.dump();
    err << "planned " << m.entries.size() << " entries (" << m.image_count << " images x " << m.kinds.size()
        << " kinds x " << m.severities.size() << " levels)\n";
    if (!is_stdout(p.out)) out << "entries " << m.entries.size() << "\n";
    return kExitOk;
  }
  err << "generated " << m.entries.size() << " entries: " << r.written << " written, " << r.unchanged
      << " unchanged, " << m.failures.size() << " failed\n";
  out << "manifest " << (o.out_dir / kManifestFile).string() << "\n";
  out << "manifest_hash " << hex64(m.hash()) << "\n";
  out << "entries " << m.entries.size() << "\n";
  if (!m.failures.empty()) {
    std::size_t shown = 0;
    for (const auto& f : m.failures) {
      if (shown++ == 20) {
        err << "... " << m.failures.size() - 20 << " more failures in the manifest\n";
        break;
      }
      err << "failed " << f.relative_path << " " << f.kind << "/" << f.severity << ": " << f.message << "\n";
    }
    return kExitPartial;
  }
  return kExitOk;
}

int do_evaluate(const Plan& p, std::ostream& out, std::ostream& err) {
  std::optional<DatasetManifest> manifest;
  if (p.manifest) {
    manifest = DatasetManifest::load(*p.manifest);
    if (p.profile && parse_profile(*p.profile) != manifest->profile) {
      throw Error(Errc::profile_mismatch, "manifest is " + std::string(name(manifest->profile)) + ", --profile is " +
                                              *p.profile);
    }
  }
  const Config cfg =
      resolve_config(p, manifest ? std::optional<Profile>(manifest->profile) : std::nullopt);

  EvaluateOptions o;
  o.pred_root = p.pred;
  o.gt_root = p.gt;
  o.protocol = cfg.protocol;
  o.gt_format = cfg.gt_format;
  o.gt_scale = cfg.gt_scale;
  o.pred_format = cfg.pred_format;
  o.pred_scale = cfg.pred_scale;
  o.include_clean = !p.no_clean;
  o.jobs = cfg.jobs;
  o.model_id = p.model.empty() ? fs::absolute(p.pred).lexically_normal().filename().string() : p.model;
  if (o.model_id.empty()) o.model_id = fs::absolute(p.pred).lexically_normal().parent_path().filename().string();

  if (manifest) {
    std::set<std::string> unique;
    for (const auto& e : manifest->entries) unique.insert(e.relative_path);
    o.images.assign(unique.begin(), unique.end());
    o.cells = profile_cells(manifest->profile, manifest->kinds, manifest->severities);
  } else {
    o.images = list_images(p.images ? fs::path(*p.images) : fs::path(p.gt));
    o.cells = profile_cells(cfg.profile, parse_kinds(p.kinds), p.severities);
  }
  for (const auto& s : p.styles) {
    for (int l : style_levels(o.pred_root, s)) o.cells.push_back({"style:" + s, l});
  }
  const EvaluationResult r = evaluate_predictions(o);
  err << "evaluated " << o.images.size() << " images over " << r.cells.size() + (r.clean ? 1 : 0) << " cells";
  if (r.clean) err << "; clean DEE " << format_double(r.clean->scores.dee);
  err << "\n";
  emit(p.out, r.to_csv(), out, err, "cells");
  return kExitOk;
}

int do_report(const Plan& p, std::ostream& out, std::ostream& err) {
  const Config cfg = resolve_config(p);
  const int levels = level_count(cfg.profile);
  auto [cells, clean] = read_dee_csv(p.cells, levels);
  if (p.clean) clean = *p.clean;
  if (clean < 0.0) {
    throw Error(Errc::invalid_request, p.cells + " has no clean row; pass --clean");
  }
  const fs::path baseline_path = cfg.baseline ? *cfg.baseline : default_baseline_path(cfg.profile);
  const BaselineTable baseline = BaselineTable::load_csv(baseline_path, cfg.profile);

  ReportProvenance prov;
  prov.baseline_source = baseline_path.filename().string();
  prov.cells_source = fs::path(p.cells).filename().string();
  if (p.manifest) prov.manifest_hash = hex64(DatasetManifest::load(*p.manifest).hash());
  const ReportDocument doc = build_report(cells, clean, baseline, cfg.profile, prov);

  if (is_stdout(p.out)) {
    out << doc.dump();
    return kExitOk;
  }
  if (p.out) {
    write_report_bundle(doc, *p.out);
    err << "report written to " << *p.out << "\n";
  }
  out << summary_text(doc);
  return kExitOk;
}

int do_histogram(const Plan& p, std::ostream& out, std::ostream& err) {
  const Config cfg = resolve_config(p);
  const PixelHistogram h = pixel_histogram(p.in, p.bins, cfg.jobs);
  err << "histogram over " << h.images << " images, " << h.total() << " samples\n";
  emit(p.out, h.to_csv(), out, err, "histogram");
  return kExitOk;
}

int do_verify(const Plan& p, std::ostream& out, std::ostream& err) {
  const Config cfg = resolve_config(p);
  VerifyOptions o;
  o.manifest_path = p.manifest.value_or("");
  o.sample = p.sample;
  if (!p.in.empty()) o.clean_dir = p.in;
  o.jobs = cfg.jobs;
  const VerifyResult r = verify_dataset(o);
  for (const auto& problem : r.problems) err << "mismatch " << problem << "\n";
  out << "verified " << r.checked << " entries, " << r.problems.size() << " mismatches\n";
  return r.ok() ? kExitOk : kExitPartial;
}

[[noreturn]] void usage_error(const CLI::App& app, const std::string& message) {
  throw UsageError(message, app.help());
}

void validate_kinds(const CLI::App& app, const Plan& p) {
  std::set<std::string> seen;
  for (const auto& k : p.kinds) {
    CorruptionKind kind{};
    if (!try_parse_kind(k, kind)) usage_error(app, "unknown corruption kind '" + k + "'");
    if (!seen.insert(k).second) usage_error(app, "kind '" + k + "' listed twice");
    if (p.profile && !profile_has_kind(parse_profile(*p.profile), kind)) {
      usage_error(app, "kind '" + k + "' is not part of profile " + *p.profile);
    }
  }
  std::set<int> levels;
  const int max_level = p.profile ? level_count(parse_profile(*p.profile)) : 5;
  for (int s : p.severities) {
    if (s < 1 || s > max_level) usage_error(app, "severity " + std::to_string(s) + " outside 1.." + std::to_string(max_level));
    if (!levels.insert(s).second) usage_error(app, "severity " + std::to_string(s) + " listed twice");
  }
}

}  // namespace

Plan parse_plan(const std::vector<std::string>& args) {
  Plan plan;
  std::string out_value;
  CLI::App app{"Corruption benchmark toolkit for monocular depth estimation", "depthbench"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  app.fallthrough(false);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", plan.config, "Config document (default: $" + std::string(kConfigEnvVar) + ")");
    sub->add_option("--jobs", plan.jobs, "Worker threads, 0 = all cores");
  };

  auto* corrupt = app.add_subcommand("corrupt", "Write every image x kind x severity of a clean set");
  corrupt->add_option("--in", plan.in, "Clean image directory")->required();
  corrupt->add_option("--out", plan.out, "Output dataset directory ('-' with --dry-run prints the manifest)");
  corrupt->add_option("--profile", plan.profile, "outdoor-5 or indoor-4");
  corrupt->add_option("--kinds", plan.kinds, "Comma-separated kinds (default: all of the profile)")->delimiter(',');
  corrupt->add_option("--severities", plan.severities, "Comma-separated levels (default: all)")->delimiter(',');
  corrupt->add_option("--seed", plan.seed, "Root seed");
  corrupt->add_option("--table", plan.table, "Severity table document");
  corrupt->add_option("--frost-dir", plan.frost_dir, "Directory of frost overlay photographs");
  corrupt->add_option("--name", plan.name, "Dataset id recorded in the manifest");
  corrupt->add_flag("--dry-run", plan.dry_run, "Plan the manifest without decoding or writing images");
  common(corrupt);

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth, one row per cell");
  evaluate->add_option("--pred", plan.pred, "Prediction root")->required();
  evaluate->add_option("--gt", plan.gt, "Ground-truth root")->required();
  evaluate->add_option("--manifest", plan.manifest, "Take images and cells from a generated dataset");
  evaluate->add_option("--images", plan.images, "Clean image directory naming the frames (default: --gt listing)");
  evaluate->add_option("--profile", plan.profile, "outdoor-5 or indoor-4");
  evaluate->add_option("--kinds", plan.kinds, "Comma-separated kinds")->delimiter(',');
  evaluate->add_option("--severities", plan.severities, "Comma-separated levels")->delimiter(',');
  evaluate->add_option("--style", plan.styles, "External stylised set under <pred>/style_<name>/<level>/");
  evaluate->add_option("--model", plan.model, "Model id (default: prediction directory name)");
  evaluate->add_option("--protocol", plan.protocol, "kitti or nyu");
  evaluate->add_option("--gt-format", plan.gt_format, "png16 or pfm");
  evaluate->add_option("--gt-scale", plan.gt_scale, "PNG value per metre");
  evaluate->add_option("--pred-format", plan.pred_format, "png16 or pfm");
  evaluate->add_option("--pred-scale", plan.pred_scale, "PNG value per metre");
  evaluate->add_flag("--no-clean", plan.no_clean, "Skip the clean prediction set");
  evaluate->add_option("--out", plan.out, "Cell CSV path or '-' (default)");
  common(evaluate);

  auto* report = app.add_subcommand("report", "mCE / mRR report from a cell CSV and a baseline");
  report->add_option("--cells", plan.cells, "model_id,kind,severity,dee CSV")->required();
  report->add_option("--baseline", plan.baseline, "Baseline CSV (default: shipped table for the profile)");
  report->add_option("--profile", plan.profile, "outdoor-5 or indoor-4");
  report->add_option("--clean", plan.clean, "Clean DEE when the CSV has no clean row");
  report->add_option("--manifest", plan.manifest, "Dataset manifest recorded in the provenance block");
  report->add_option("--out", plan.out, "Bundle directory, or '-' for the JSON document");
  common(report);

  auto* histogram = app.add_subcommand("histogram", "Per-channel pixel histogram of an image directory");
  histogram->add_option("--in", plan.in, "Image directory")->required();
  histogram->add_option("--bins", plan.bins, "Bin count");
  histogram->add_option("--out", plan.out, "CSV path or '-' (default)");
  common(histogram);

  auto* verify = app.add_subcommand("verify", "Regenerate a sample of a dataset and compare hashes");
  verify->add_option("--manifest", plan.manifest, "manifest.json of the dataset")->required();
  verify->add_option("--sample", plan.sample, "Entries to audit, 0 = all");
  verify->add_option("--in", plan.in, "Clean directory (default: the one recorded in the manifest)");
  common(verify);

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-' && app.get_subcommand_no_throw(args.front()) == nullptr) {
    throw UsageError("unknown command '" + args.front() + "'", app.help());
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    throw InfoRequest{o.str()};
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream o, er;
    app.exit(e, o, er);
    throw InfoRequest{o.str()};
  } catch (const CLI::CallForVersion& e) {
    throw InfoRequest{std::string(kVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what(), app.help());
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string cmd = sub->get_name();
  plan.command = cmd == "corrupt"    ? Command::corrupt
                 : cmd == "evaluate" ? Command::evaluate
                 : cmd == "report"   ? Command::report
                 : cmd == "histogram" ? Command::histogram
                                       : Command::verify;

  if (plan.profile) {
    try {
      parse_profile(*plan.profile);
    } catch (const Error& e) {
      usage_error(*sub, e.message());
    }
  }
  if (plan.jobs && *plan.jobs < 0) usage_error(*sub, "--jobs must be non-negative");
  validate_kinds(*sub, plan);

  switch (plan.command) {
    case Command::corrupt:
      if (!plan.out && !plan.dry_run) usage_error(*sub, "--out is required");
      if (is_stdout(plan.out) && !plan.dry_run) usage_error(*sub, "--out - is only valid with --dry-run");
      break;
    case Command::evaluate:
      if (plan.manifest && plan.images) usage_error(*sub, "--manifest and --images are mutually exclusive");
      if (plan.manifest && (!plan.kinds.empty() || !plan.severities.empty())) {
        usage_error(*sub, "--kinds/--severities cannot be combined with --manifest");
      }
      for (const auto* f : {&plan.gt_format, &plan.pred_format}) {
        if (*f && *f != "png16" && *f != "pfm") usage_error(*sub, "depth format must be png16 or pfm");
      }
      for (const auto* s : {&plan.gt_scale, &plan.pred_scale}) {
        if (*s && !(**s > 0.0)) usage_error(*sub, "depth scale must be positive");
      }
      if (plan.protocol && *plan.protocol != "kitti" && *plan.protocol != "nyu") {
        usage_error(*sub, "--protocol must be kitti or nyu");
      }
      for (const auto& s : plan.styles) {
        if (s.empty() || s.find('/') != std::string::npos || s.find(':') != std::string::npos) {
          usage_error(*sub, "invalid style name '" + s + "'");
        }
      }
      break;
    case Command::report:
      if (plan.clean && !(*plan.clean >= 0.0 && *plan.clean < 1.0)) usage_error(*sub, "--clean must lie in [0, 1)");
      break;
    case Command::histogram:
      if (plan.bins < 1 || plan.bins > 65536) usage_error(*sub, "--bins must lie in [1, 65536]");
      break;
    case Command::verify:
      break;
  }
  return plan;
}

int execute(const Plan& plan, std::ostream& out, std::ostream& err) {
  switch (plan.command) {
    case Command::corrupt:
      return do_corrupt(plan, out, err);
    case Command::evaluate:
      return do_evaluate(plan, out, err);
    case Command::report:
      return do_report(plan, out, err);
    case Command::histogram:
      return do_histogram(plan, out, err);
    case Command::verify:
      return do_verify(plan, out, err);
  }
  return kExitInvalid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Plan plan;
  try {
    plan = parse_plan(args);
  } catch (const InfoRequest& info) {
    out << info.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << e.usage();
    return kExitInvalid;
  }
  try {
    return execute(plan, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInvalid;
}

}  // namespace depthbench::cli
