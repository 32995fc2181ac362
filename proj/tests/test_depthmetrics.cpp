#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "depthbench/depth_metrics.hpp"
#include "depthbench/error.hpp"

namespace db = depthbench;

namespace {

db::EvalProtocol full_range() {
  db::EvalProtocol p;
  p.min_depth = 1e-3;
  p.max_depth = 80.0;
  return p;
}

db::Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const db::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return db::Errc::io_error;
}

double np_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Straightforward per-pixel evaluation written independently of the library.
db::DepthScores naive(const db::DepthMap& pred, const db::DepthMap& gt, const db::EvalProtocol& p) {
  const int w = gt.width(), h = gt.height();
  int y0 = 0, y1 = h, x0 = 0, x1 = w;
  if (p.use_crop) {
    y0 = static_cast<int>(std::floor(p.crop.top * h + 1e-9));
    y1 = static_cast<int>(std::floor(p.crop.bottom * h + 1e-9));
    x0 = static_cast<int>(std::floor(p.crop.left * w + 1e-9));
    x1 = static_cast<int>(std::floor(p.crop.right * w + 1e-9));
  }
  std::vector<double> g, q;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      if (!gt.valid(x, y) || !pred.valid(x, y)) continue;
      const double gv = gt.value(x, y);
      if (gv < p.min_depth || gv > p.max_depth) continue;
      g.push_back(gv);
      q.push_back(pred.value(x, y));
    }
  if (p.median_scaling) {
    const double r = np_median(g) / np_median(q);
    for (double& v : q) v *= r;
  }
  for (double& v : q) v = std::clamp(v, p.min_depth, p.max_depth);
  db::DepthScores s;
  const double n = static_cast<double>(g.size());
  double ar = 0, sr = 0, se = 0, sl = 0, a1 = 0, a2 = 0, a3 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = g[i] - q[i];
    ar += std::abs(d) / g[i];
    sr += d * d / g[i];
    se += d * d;
    const double l = std::log(g[i]) - std::log(q[i]);
    sl += l * l;
    const double t = std::max(g[i] / q[i], q[i] / g[i]);
    a1 += t < 1.25;
    a2 += t < 1.25 * 1.25;
    a3 += t < 1.25 * 1.25 * 1.25;
  }
  s.abs_rel = ar / n;
  s.sq_rel = sr / n;
  s.rmse = std::sqrt(se / n);
  s.rmse_log = std::sqrt(sl / n);
  s.d1 = a1 / n;
  s.d2 = a2 / n;
  s.d3 = a3 / n;
  s.dee = (s.abs_rel - s.d1 + 1) / 2;
  s.count = g.size();
  return s;
}

}  // namespace

TEST(Dee, Formula) {
  EXPECT_DOUBLE_EQ(db::dee(0.0, 1.0), 0.0);
  EXPECT_NEAR(db::dee(0.115, 0.877), 0.119, 1e-12);
  EXPECT_NEAR(db::dee(0.099, 0.900), 0.0995, 1e-12);
  EXPECT_LT(db::dee(0.1, 0.9), db::dee(0.2, 0.9));
  EXPECT_GT(db::dee(0.1, 0.8), db::dee(0.1, 0.9));
}

TEST(ComputeScores, PerfectPrediction) {
  db::DepthMap gt(4, 3, std::vector<float>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  const auto s = db::compute_scores(gt, gt, full_range());
  EXPECT_EQ(s.abs_rel, 0.0);
  EXPECT_EQ(s.sq_rel, 0.0);
  EXPECT_EQ(s.rmse, 0.0);
  EXPECT_EQ(s.d1, 1.0);
  EXPECT_EQ(s.d3, 1.0);
  EXPECT_EQ(s.dee, 0.0);
  EXPECT_EQ(s.count, 12u);
}

TEST(ComputeScores, FourPixelOracle) {
  db::DepthMap gt(2, 2, std::vector<float>{1, 2, 4, 8});
  db::DepthMap pred(2, 2, std::vector<float>{1.1f, 1.8f, 4.4f, 8.0f});
  const auto s = db::compute_scores(pred, gt, full_range());
  EXPECT_NEAR(s.abs_rel, 0.075, 1e-7);
  EXPECT_EQ(s.d1, 1.0);
  EXPECT_NEAR(s.dee, 0.0375, 1e-7);
}

TEST(ComputeScores, MedianScalingInvariance) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<float> u(1.0f, 60.0f);
  std::vector<float> v(256);
  for (float& x : v) x = u(gen);
  db::DepthMap gt(16, 16, v);
  auto proto = full_range();
  proto.median_scaling = true;
  for (double c : {0.5, 1.0, 3.0}) {
    std::vector<float> p(v.size());
    std::transform(v.begin(), v.end(), p.begin(), [c](float x) { return static_cast<float>(x * c); });
    EXPECT_NEAR(db::compute_scores(db::DepthMap(16, 16, p), gt, proto).dee, 0.0, 1e-7) << c;
  }
}

TEST(ComputeScores, MatchesNaiveLoop) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<float> depth(0.5f, 90.0f);
  std::uniform_real_distribution<float> noise(0.6f, 1.5f);
  std::bernoulli_distribution hole(0.2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<float> g(256), p(256);
    std::vector<std::uint8_t> gm(256), pm(256, 1);
    for (int i = 0; i < 256; ++i) {
      g[i] = depth(gen);
      gm[i] = hole(gen) ? 0 : 1;
      p[i] = g[i] * noise(gen);
    }
    gm[0] = 1;
    g[0] = 10.0f;
    const db::DepthMap gt(16, 16, g, gm), pred(16, 16, p, pm);
    auto proto = full_range();
    proto.median_scaling = trial % 2 == 0;
    if (trial % 3 == 0) {
      proto.use_crop = true;
      proto.crop = {0.0, 0.75, 0.0, 1.0};
    }
    const auto a = db::compute_scores(pred, gt, proto);
    const auto b = naive(pred, gt, proto);
    ASSERT_EQ(a.count, b.count) << trial;
    EXPECT_NEAR(a.abs_rel, b.abs_rel, 1e-9) << trial;
    EXPECT_NEAR(a.sq_rel, b.sq_rel, 1e-9) << trial;
    EXPECT_NEAR(a.rmse, b.rmse, 1e-9) << trial;
    EXPECT_NEAR(a.rmse_log, b.rmse_log, 1e-9) << trial;
    EXPECT_NEAR(a.d1, b.d1, 1e-9) << trial;
    EXPECT_NEAR(a.d2, b.d2, 1e-9) << trial;
    EXPECT_NEAR(a.d3, b.d3, 1e-9) << trial;
    EXPECT_NEAR(a.dee, b.dee, 1e-9) << trial;
    EXPECT_LE(a.d1, a.d2);
    EXPECT_LE(a.d2, a.d3);
  }
}

TEST(ComputeScores, RangeAndCropFilter) {
  db::DepthMap gt(640, 192, 10.0f);
  const auto s = db::compute_scores(gt, gt, db::EvalProtocol::kitti());
  EXPECT_EQ(s.count, 112u * 593u);
  db::DepthMap far(2, 1, std::vector<float>{5.0f, 100.0f});
  EXPECT_EQ(db::compute_scores(far, far, full_range()).count, 1u);
}

TEST(ComputeScores, PredictionIsClampedToRange) {
  db::DepthMap gt(1, 1, std::vector<float>{80.0f});
  db::DepthMap pred(1, 1, std::vector<float>{160.0f});
  EXPECT_EQ(db::compute_scores(pred, gt, full_range()).abs_rel, 0.0);
}

TEST(ComputeScores, ResizesMismatchedPrediction) {
  db::DepthMap gt(8, 4, 5.0f);
  db::DepthMap pred(4, 2, 5.0f);
  EXPECT_EQ(db::compute_scores(pred, gt, full_range()).dee, 0.0);
  auto proto = full_range();
  proto.resize_prediction = false;
  EXPECT_EQ(code_of([&] { db::compute_scores(pred, gt, proto); }), db::Errc::shape_mismatch);
}

TEST(ComputeScores, Errors) {
  db::DepthMap empty(4, 4, 0.0f);
  EXPECT_EQ(code_of([&] { db::compute_scores(empty, empty, full_range()); }), db::Errc::empty_evaluation);
  db::DepthMap gt(2, 1, std::vector<float>{1.0f, 2.0f});
  db::DepthMap bad(2, 1, std::vector<float>{1.0f, -1.0f}, std::vector<std::uint8_t>{1, 1});
  EXPECT_EQ(code_of([&] { db::compute_scores(bad, gt, full_range()); }), db::Errc::invalid_depth);
  auto proto = full_range();
  proto.min_depth = 10.0;
  proto.max_depth = 5.0;
  EXPECT_EQ(code_of([&] { db::compute_scores(gt, gt, proto); }), db::Errc::invalid_parameter);
}

TEST(Protocols, Defaults) {
  const auto k = db::EvalProtocol::kitti();
  EXPECT_EQ(k.max_depth, 80.0);
  EXPECT_TRUE(k.median_scaling);
  EXPECT_TRUE(k.use_crop);
  const auto n = db::EvalProtocol::nyu();
  EXPECT_EQ(n.max_depth, 10.0);
  EXPECT_FALSE(n.median_scaling);
  EXPECT_NO_THROW(k.validate());
  EXPECT_NO_THROW(n.validate());
}

TEST(Aggregate, Oracle) {
  db::DepthScores a, b;
  a.abs_rel = 0.1;
  a.d1 = 0.9;
  b.abs_rel = 0.3;
  b.d1 = 0.7;
  a.dee = db::dee(a.abs_rel, a.d1);
  b.dee = db::dee(b.abs_rel, b.d1);
  const std::vector<db::DepthScores> v{a, b};
  const auto m = db::aggregate_set(v);
  EXPECT_NEAR(m.abs_rel, 0.2, 1e-15);
  EXPECT_NEAR(m.d1, 0.8, 1e-15);
  EXPECT_NEAR(m.dee, 0.2, 1e-15);
  const std::vector<db::DepthScores> one{a};
  EXPECT_DOUBLE_EQ(db::aggregate_set(one).dee, a.dee);
  const std::vector<db::DepthScores> same{a, a};
  EXPECT_DOUBLE_EQ(db::aggregate_set(same).abs_rel, a.abs_rel);
  EXPECT_EQ(code_of([] { db::aggregate_set({}); }), db::Errc::empty_evaluation);
}

TEST(Median, NumpyConvention) {
  EXPECT_EQ(db::median({3, 1, 2}), 2.0);
  EXPECT_EQ(db::median({4, 1, 3, 2}), 2.5);
}

TEST(NeumaierSum, RecoversSmallTerms) {
  db::NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 2.0);
}
