#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "depthbench/corruptions.hpp"
#include "depthbench/depth_io.hpp"
#include "depthbench/error.hpp"
#include "depthbench/evaluate.hpp"
#include "depthbench/generate.hpp"
#include "depthbench/histogram.hpp"
#include "depthbench/image_io.hpp"
#include "depthbench/report.hpp"
#include "depthbench/rng.hpp"
#include "scenes.hpp"
#include "tempdir.hpp"

namespace db = depthbench;
namespace fs = std::filesystem;
using db::CorruptionKind;
using db::testing::TempDir;

namespace {

template <typename F>
db::Errc error_code_of(F&& f) {
  try {
    f();
  } catch (const db::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no depthbench::Error thrown";
  return db::Errc::io_error;
}

void write_corpus(const fs::path& dir, int count, int w, int h) {
  const auto images = db::testing::synthetic_corpus(count, w, h);
  for (int i = 0; i < count; ++i) {
    db::write_png(dir / ("seq" + std::to_string(i / 2)) / ("frame_" + std::to_string(i) + ".png"), images[i]);
  }
}

db::GenerateOptions small_run(const fs::path& clean, const fs::path& out) {
  db::GenerateOptions o;
  o.clean_dir = clean;
  o.out_dir = out;
  o.kinds = {CorruptionKind::gaussian_noise, CorruptionKind::defocus_blur};
  o.seed_root = 7;
  return o;
}

std::vector<std::uint64_t> entry_hashes(const db::DatasetManifest& m) {
  std::vector<std::uint64_t> out;
  for (const auto& e : m.entries) out.push_back(e.content_hash.value_or(0));
  return out;
}

db::DepthMap ramp_depth(int w, int h, double scale) {
  db::DepthMap d(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) d.set(x, y, static_cast<float>(scale * (1.0 + x + 2 * y) / 4.0));
  }
  return d;
}

}  // namespace

// ---- depth codecs ---------------------------------------------------------

TEST(DepthPng16, FourPixelRoundTripThroughFile) {
  TempDir tmp("png16");
  db::DepthMap d(2, 2, std::vector<float>{1.0f, 2.5f, 80.0f, 0.0f});
  db::write_depth(tmp / "d.png", d, db::DepthFormat::png16, 256.0);
  const auto back = db::read_ground_truth(tmp / "d.png", db::DepthFormat::png16, 256.0);
  ASSERT_EQ(back.width(), 2);
  EXPECT_EQ(back.value(0, 0), 1.0f);
  EXPECT_EQ(back.value(1, 0), 2.5f);
  EXPECT_EQ(back.value(0, 1), 80.0f);
  EXPECT_TRUE(back.valid(0, 0));
  EXPECT_FALSE(back.valid(1, 1));
}

TEST(DepthPng16, QuantisationErrorIsHalfAStep) {
  TempDir tmp("png16q");
  db::DepthMap d(64, 1);
  for (int x = 0; x < 64; ++x) d.set(0 + x, 0, static_cast<float>(0.1 + 3.7 * x));
  db::write_depth(tmp / "q.png", d, db::DepthFormat::png16, 256.0);
  const auto back = db::read_ground_truth(tmp / "q.png", db::DepthFormat::png16, 256.0);
  for (int x = 0; x < 64; ++x) EXPECT_LE(std::abs(back.value(x, 0) - d.value(x, 0)), 0.5 / 256.0 + 1e-6);
}

TEST(DepthPng16, OutOfRangeIsRejected) {
  db::DepthMap d(1, 1, std::vector<float>{300.0f});
  EXPECT_EQ(error_code_of([&] { db::encode_depth_png16(d, 256.0); }), db::Errc::invalid_parameter);
}

TEST(DepthPfm, RoundTripIsBitExact) {
  db::DeterministicRng rng(3);
  db::DepthMap d(7, 5);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 7; ++x) d.set(x, y, static_cast<float>(rng.uniform(0.01, 90.0)));
  }
  const auto back = db::decode_pfm(db::encode_pfm(d));
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 7; ++x) EXPECT_EQ(back.value(x, y), d.value(x, y));
  }
}

TEST(DepthPfm, BigEndianBottomUp) {
  std::string header = "Pf\n1 2\n1.0\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  // bottom row 2.0, top row 4.0, big-endian
  for (std::uint8_t b : {0x40, 0x00, 0x00, 0x00, 0x40, 0x80, 0x00, 0x00}) bytes.push_back(b);
  const auto d = db::decode_pfm(bytes);
  EXPECT_EQ(d.value(0, 0), 4.0f);
  EXPECT_EQ(d.value(0, 1), 2.0f);
}

TEST(DepthPfm, TruncatedIsParseError) {
  std::string text = "Pf\n4 4\n-1.0\nabc";
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  EXPECT_EQ(error_code_of([&] { db::decode_pfm(bytes); }), db::Errc::parse_error);
}

// ---- dataset generation ----------------------------------------------------

TEST(Generate, WritesEveryCellAndIsIdempotent) {
  TempDir tmp("gen");
  write_corpus(tmp / "clean", 2, 96, 48);
  const auto first = db::generate_dataset(small_run(tmp / "clean", tmp / "out"));
  const auto& m = first.manifest;
  ASSERT_EQ(m.entries.size(), 20u);
  EXPECT_EQ(first.written, 20u);
  EXPECT_TRUE(m.failures.empty());
  EXPECT_EQ(m.image_count, 2u);
  EXPECT_TRUE(fs::exists(tmp / "out" / db::kManifestFile));
  EXPECT_TRUE(fs::exists(tmp / "out" / db::kSeverityTableFile));
  for (const auto& e : m.entries) {
    ASSERT_TRUE(e.content_hash.has_value());
    const auto on_disk = db::read_image(tmp / "out" / e.output_path);
    EXPECT_EQ(db::content_hash(on_disk), *e.content_hash) << e.output_path;
  }
  EXPECT_EQ(m.entries.front().output_path, "defocus_blur/1/seq0/frame_0.png");

  const auto again = db::generate_dataset(small_run(tmp / "clean", tmp / "out"));
  EXPECT_EQ(again.written, 0u);
  EXPECT_EQ(again.unchanged, 20u);
  EXPECT_EQ(again.manifest.dump(), m.dump());
}

TEST(Generate, WorkerCountDoesNotChangeBytes) {
  TempDir tmp("genjobs");
  write_corpus(tmp / "clean", 3, 64, 32);
  auto a = small_run(tmp / "clean", tmp / "a");
  a.jobs = 1;
  auto b = small_run(tmp / "clean", tmp / "b");
  b.jobs = 8;
  EXPECT_EQ(entry_hashes(db::generate_dataset(a).manifest), entry_hashes(db::generate_dataset(b).manifest));
}

TEST(Generate, SeedRootChangesStochasticOutput) {
  TempDir tmp("genseed");
  write_corpus(tmp / "clean", 1, 64, 32);
  auto a = small_run(tmp / "clean", tmp / "a");
  auto b = small_run(tmp / "clean", tmp / "b");
  b.seed_root = 8;
  const auto ha = entry_hashes(db::generate_dataset(a).manifest);
  const auto hb = entry_hashes(db::generate_dataset(b).manifest);
  // defocus cells do not depend on the seed, noise cells do
  EXPECT_EQ(ha[0], hb[0]);
  EXPECT_NE(ha[5], hb[5]);
}

TEST(Generate, UnreadableImageIsRecordedNotFatal) {
  TempDir tmp("genfail");
  write_corpus(tmp / "clean", 1, 64, 32);
  std::ofstream(tmp / "clean" / "broken.png") << "not a png";
  const auto r = db::generate_dataset(small_run(tmp / "clean", tmp / "out"));
  ASSERT_FALSE(r.manifest.failures.empty());
  EXPECT_EQ(r.manifest.failures.front().relative_path, "broken.png");
  std::size_t hashed = 0;
  for (const auto& e : r.manifest.entries) hashed += e.content_hash.has_value();
  EXPECT_EQ(hashed, 10u);
}

TEST(Generate, RequestErrors) {
  TempDir tmp("generr");
  write_corpus(tmp / "clean", 1, 64, 32);
  auto o = small_run(tmp / "clean", tmp / "out");
  o.kinds.clear();
  EXPECT_EQ(error_code_of([&] { db::generate_dataset(o); }), db::Errc::invalid_request);
  o = small_run(tmp / "clean", tmp / "out");
  o.profile = db::Profile::indoor4;
  o.kinds = {CorruptionKind::fog};
  EXPECT_EQ(error_code_of([&] { db::generate_dataset(o); }), db::Errc::invalid_request);
  o = small_run(tmp / "clean", tmp / "out");
  o.severities = {6};
  EXPECT_EQ(error_code_of([&] { db::generate_dataset(o); }), db::Errc::invalid_request);
  fs::create_directories(tmp / "empty");
  o = small_run(tmp / "empty", tmp / "out");
  EXPECT_EQ(error_code_of([&] { db::generate_dataset(o); }), db::Errc::empty_input);
}

TEST(Generate, PlanOnlyWritesNothing) {
  TempDir tmp("genplan");
  write_corpus(tmp / "clean", 2, 64, 32);
  auto o = small_run(tmp / "clean", tmp / "out");
  o.plan_only = true;
  const auto r = db::generate_dataset(o);
  EXPECT_EQ(r.manifest.entries.size(), 20u);
  EXPECT_FALSE(fs::exists(tmp / "out"));
}

TEST(Generate, PlanCardinalities) {
  auto names = [](int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back("img_" + std::to_string(i) + ".png");
    return v;
  };
  const auto outdoor = db::plan_entries(names(697), db::profile_kinds(db::Profile::outdoor5), {1, 2, 3, 4, 5}, 0);
  EXPECT_EQ(outdoor.size(), 62730u);
  const auto indoor = db::plan_entries(names(654), db::profile_kinds(db::Profile::indoor4), {1, 2, 3, 4}, 0);
  EXPECT_EQ(indoor.size(), 39240u);
  std::set<std::uint64_t> seeds;
  for (const auto& e : outdoor) seeds.insert(e.derived_seed);
  EXPECT_EQ(seeds.size(), outdoor.size());
}

TEST(Generate, SampleIndicesAreDistinctAndSorted) {
  const auto idx = db::sample_indices(100, 30, 11);
  ASSERT_EQ(idx.size(), 30u);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 30u);
  EXPECT_EQ(idx, db::sample_indices(100, 30, 11));
  EXPECT_EQ(db::sample_indices(5, 50, 1).size(), 5u);
}

TEST(Verify, AcceptsAGeneratedDatasetAndFlagsTampering) {
  TempDir tmp("verify");
  write_corpus(tmp / "clean", 2, 64, 32);
  const auto r = db::generate_dataset(small_run(tmp / "clean", tmp / "out"));
  db::VerifyOptions v;
  v.manifest_path = tmp / "out" / db::kManifestFile;
  v.sample = 0;
  const auto ok = db::verify_dataset(v);
  EXPECT_EQ(ok.checked, 20u);
  EXPECT_TRUE(ok.ok());

  const auto& victim = r.manifest.entries[3];
  db::write_png(tmp / "out" / victim.output_path, db::ImageBuffer(64, 32, 0.25f));
  const auto bad = db::verify_dataset(v);
  ASSERT_EQ(bad.problems.size(), 1u);
  EXPECT_NE(bad.problems.front().find(victim.output_path), std::string::npos);
}

TEST(Verify, TableEditIsDetected) {
  TempDir tmp("verifytab");
  write_corpus(tmp / "clean", 1, 64, 32);
  db::generate_dataset(small_run(tmp / "clean", tmp / "out"));
  auto table = db::SeverityTable::defaults();
  std::ofstream(tmp / "out" / db::kSeverityTableFile) << table.to_json().dump(4);
  db::VerifyOptions v;
  v.manifest_path = tmp / "out" / db::kManifestFile;
  // same content, different bytes: hashing is over the canonical document
  EXPECT_NO_THROW(db::verify_dataset(v));
  auto doc = table.to_json();
  doc["gaussian_noise"][0]["sigma"] = 0.07;
  std::ofstream(tmp / "out" / db::kSeverityTableFile) << doc.dump(2);
  EXPECT_EQ(error_code_of([&] { db::verify_dataset(v); }), db::Errc::invalid_request);
}

// ---- evaluation ------------------------------------------------------------

class EvaluateFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    images = {"a.png", "sub/b.png"};
    for (const auto& rel : images) {
      const auto gt = ramp_depth(32, 16, 1.0);
      db::write_depth(db::ground_truth_path(tmp / "gt", rel, db::DepthFormat::png16), gt, db::DepthFormat::png16, 256.0);
      for (const auto& cell : cells_with_clean()) {
        db::write_depth(db::prediction_path(tmp / "pred", cell, rel, db::DepthFormat::png16), gt,
                        db::DepthFormat::png16, 256.0);
      }
    }
  }
  std::vector<db::CellId> cells() const {
    return db::profile_cells(db::Profile::outdoor5, {CorruptionKind::fog}, {1, 2});
  }
  std::vector<db::CellId> cells_with_clean() const {
    auto c = cells();
    c.push_back({"clean", 0});
    return c;
  }
  db::EvaluateOptions options() const {
    db::EvaluateOptions o;
    o.pred_root = tmp / "pred";
    o.gt_root = tmp / "gt";
    o.images = images;
    o.cells = cells();
    o.protocol = db::EvalProtocol{};
    o.model_id = "perfect";
    return o;
  }
  TempDir tmp{"eval"};
  std::vector<std::string> images;
};

TEST_F(EvaluateFixture, PerfectPredictionsScoreZero) {
  const auto r = db::evaluate_predictions(options());
  ASSERT_TRUE(r.clean.has_value());
  EXPECT_EQ(r.clean->scores.dee, 0.0);
  ASSERT_EQ(r.cells.size(), 2u);
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.images, 2u);
    EXPECT_EQ(c.scores.abs_rel, 0.0);
    EXPECT_EQ(c.scores.d1, 1.0);
  }
  EXPECT_EQ(r.cells[0].cell, (db::CellId{"fog", 1}));
  const auto csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "model_id,kind,severity,dee,abs_rel,sq_rel,rmse,rmse_log,d1,d2,d3,images");
  EXPECT_NE(csv.find("perfect,clean,0,"), std::string::npos);
}

TEST_F(EvaluateFixture, ScaledPredictionMatchesMetricOracle) {
  // prediction = 1.25 · gt everywhere: abs_rel .25, d1 = 1 (1.25 ≥ 1.25 is not < 1.25 → 0)
  const db::CellId cell{"fog", 1};
  for (const auto& rel : images) {
    db::write_depth(db::prediction_path(tmp / "pred", cell, rel, db::DepthFormat::pfm), ramp_depth(32, 16, 1.25),
                    db::DepthFormat::pfm, 1.0);
  }
  auto o = options();
  o.cells = {cell};
  o.include_clean = false;
  o.pred_format = db::DepthFormat::pfm;
  const auto r = db::evaluate_predictions(o);
  EXPECT_NEAR(r.cells[0].scores.abs_rel, 0.25, 1e-6);
  EXPECT_NEAR(r.cells[0].scores.dee, (0.25 - r.cells[0].scores.d1 + 1.0) / 2.0, 1e-12);
  EXPECT_FALSE(r.clean.has_value());
  EXPECT_EQ(r.clean_dee(), -1.0);
}

TEST_F(EvaluateFixture, MissingPredictionNamesThePath) {
  const auto victim = db::prediction_path(tmp / "pred", {"fog", 2}, "sub/b.png", db::DepthFormat::png16);
  fs::remove(victim);
  try {
    db::evaluate_predictions(options());
    FAIL() << "expected missing_prediction";
  } catch (const db::Error& e) {
    EXPECT_EQ(e.code(), db::Errc::missing_prediction);
    EXPECT_NE(std::string(e.what()).find(victim.string()), std::string::npos) << e.what();
  }
}

TEST_F(EvaluateFixture, StyleSetsAreDiscoveredByLevel) {
  for (int level : {1, 3}) {
    for (const auto& rel : images) {
      db::write_depth(db::prediction_path(tmp / "pred", {"style:tar", level}, rel, db::DepthFormat::png16),
                      ramp_depth(32, 16, 1.0), db::DepthFormat::png16, 256.0);
    }
  }
  EXPECT_EQ(db::style_levels(tmp / "pred", "tar"), (std::vector<int>{1, 3}));
  auto o = options();
  o.cells = {{"style:tar", 1}, {"style:tar", 3}};
  const auto r = db::evaluate_predictions(o);
  EXPECT_EQ(r.cells.size(), 2u);
}

// ---- report ----------------------------------------------------------------

namespace {

const fs::path kData = DEPTHBENCH_DATA_DIR;

db::ReportDocument monovit_report() {
  const auto baseline = db::BaselineTable::load_csv(kData / "baselines/kitti_c_monodepth2_r18.csv", db::Profile::outdoor5);
  const auto [cells, clean] = db::read_dee_csv(kData / "examples/kitti_c_monovit.csv", 5);
  db::ReportProvenance p;
  p.baseline_source = "kitti_c_monodepth2_r18.csv";
  p.cells_source = "kitti_c_monovit.csv";
  return db::build_report(cells, clean, baseline, db::Profile::outdoor5, p);
}

}  // namespace

TEST(Report, HeadlineNumbers) {
  const auto doc = monovit_report();
  EXPECT_NEAR(doc.report.mce, 79.33, 0.05);
  EXPECT_NEAR(doc.report.mrr, 89.15, 0.05);
  EXPECT_NE(db::summary_text(doc).find("mCE 79.3\n"), std::string::npos);
}

TEST(Report, JsonRoundTripIsByteIdentical) {
  const auto text = monovit_report().dump();
  const auto parsed = db::ReportDocument::parse(text);
  EXPECT_EQ(parsed.dump(), text);
  EXPECT_EQ(parsed.report.kinds.size(), 18u);
}

TEST(Report, RejectsNewerSchema) {
  auto doc = monovit_report().to_json();
  doc["schema_version"] = 99;
  EXPECT_EQ(error_code_of([&] { db::ReportDocument::from_json(doc); }), db::Errc::version_mismatch);
}

TEST(Report, BaselineAgainstItselfIsOneHundred) {
  const auto baseline = db::BaselineTable::load_csv(kData / "baselines/kitti_c_monodepth2_r18.csv", db::Profile::outdoor5);
  const auto doc = db::build_report(baseline.all_cells(), baseline.clean_dee(), baseline, db::Profile::outdoor5);
  EXPECT_NEAR(doc.report.mce, 100.0, 1e-9);
  for (const auto& c : doc.report.categories) EXPECT_NEAR(c.mce, 100.0, 1e-9);
}

TEST(Report, ProfileMismatch) {
  const auto baseline = db::BaselineTable::load_csv(kData / "baselines/kitti_c_monodepth2_r18.csv", db::Profile::outdoor5);
  EXPECT_EQ(error_code_of([&] { db::build_report(baseline.all_cells(), .1, baseline, db::Profile::indoor4); }),
            db::Errc::profile_mismatch);
  EXPECT_EQ(error_code_of([&] {
              db::BaselineTable::load_csv(kData / "baselines/kitti_c_monodepth2_r18.csv", db::Profile::indoor4);
            }),
            db::Errc::profile_mismatch);
}

TEST(Report, BundleFiles) {
  TempDir tmp("bundle");
  db::write_report_bundle(monovit_report(), tmp.path());
  for (const char* f : {"report.json", "dee_matrix.csv", "kind_scores.csv", "categories.csv", "severity_curves.csv"}) {
    EXPECT_TRUE(fs::exists(tmp / f)) << f;
  }
  const auto reloaded = db::ReportDocument::load(tmp / "report.json");
  EXPECT_EQ(reloaded.dump(), monovit_report().dump());
}

// ---- histogram -------------------------------------------------------------

TEST(Histogram, ConstantImageFillsOneBin) {
  db::PixelHistogram h(256);
  h.add(db::ImageBuffer(10, 8, 0.5f));
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(h.counts[c][128], 80u);
    EXPECT_NEAR(h.variance(c), 0.0, 1e-12);
  }
  EXPECT_EQ(h.total(), 240u);
}

TEST(Histogram, DirectoryCountsEveryPixel) {
  TempDir tmp("hist");
  write_corpus(tmp.path(), 3, 40, 20);
  const auto h = db::pixel_histogram(tmp.path(), 64, 2);
  EXPECT_EQ(h.images, 3u);
  for (int c = 0; c < 3; ++c) {
    std::uint64_t n = 0;
    for (auto v : h.counts[c]) n += v;
    EXPECT_EQ(n, 3u * 40 * 20);
  }
  EXPECT_EQ(db::pixel_histogram(tmp.path(), 64, 1).counts, h.counts);
  const auto csv = h.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "bin,lower,upper,r,g,b");
}

TEST(Histogram, LowContrastNarrowsTheDistribution) {
  const auto img = db::testing::synthetic_scene(4, 128, 64);
  const auto low = db::apply_corruption(img, {CorruptionKind::contrast, 5, 1}, db::SeverityTable::defaults());
  db::PixelHistogram a(256), b(256);
  a.add(img);
  b.add(low);
  for (int c = 0; c < 3; ++c) EXPECT_LT(b.variance(c), a.variance(c));
}

TEST(Histogram, EmptyDirectory) {
  TempDir tmp("histempty");
  EXPECT_EQ(error_code_of([&] { db::pixel_histogram(tmp.path(), 256); }), db::Errc::empty_input);
  EXPECT_EQ(error_code_of([&] { db::pixel_histogram(tmp / "absent", 256); }), db::Errc::empty_input);
}
