#include "depthbench/depth_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depthbench/error.hpp"
#include "depthbench/imageops.hpp"

namespace depthbench {

DepthMap::DepthMap(int width, int height, float fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error(Errc::invalid_parameter, "depth map dimensions must be positive");
  const auto n = static_cast<std::size_t>(width) * height;
  values_.assign(n, fill);
  valid_.assign(n, fill > 0.0f ? 1 : 0);
}

DepthMap::DepthMap(int width, int height, std::vector<float> values) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw Error(Errc::invalid_parameter, "depth map dimensions must be positive");
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw Error(Errc::shape_mismatch, "depth value count does not match dimensions");
  }
  values_ = std::move(values);
  valid_.resize(values_.size());
  std::transform(values_.begin(), values_.end(), valid_.begin(), [](float v) { return v > 0.0f ? 1 : 0; });
}

DepthMap::DepthMap(int width, int height, std::vector<float> values, std::vector<std::uint8_t> valid)
    : width_(width), height_(height), values_(std::move(values)), valid_(std::move(valid)) {
  if (width < 1 || height < 1) throw Error(Errc::invalid_parameter, "depth map dimensions must be positive");
  const auto n = static_cast<std::size_t>(width) * height;
  if (values_.size() != n || valid_.size() != n) {
    throw Error(Errc::shape_mismatch, "depth value or mask count does not match dimensions");
  }
}

std::size_t DepthMap::valid_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(valid_.begin(), valid_.end(), [](std::uint8_t v) { return v != 0; }));
}

EvalProtocol EvalProtocol::kitti() {
  EvalProtocol p;
  p.min_depth = 1e-3;
  p.max_depth = 80.0;
  p.use_crop = true;
  p.crop = {0.40810811, 0.99189189, 0.03594771, 0.96405229};
  p.median_scaling = true;
  return p;
}

EvalProtocol EvalProtocol::nyu() {
  EvalProtocol p;
  p.min_depth = 1e-3;
  p.max_depth = 10.0;
  p.use_crop = true;
  p.crop = {45.0 / 480.0, 471.0 / 480.0, 41.0 / 640.0, 601.0 / 640.0};
  p.median_scaling = false;
  return p;
}

void EvalProtocol::validate() const {
  if (!(min_depth > 0.0) || !(max_depth > min_depth)) {
    throw Error(Errc::invalid_parameter, "protocol requires 0 < min_depth < max_depth");
  }
  if (use_crop && !(crop.top >= 0.0 && crop.top < crop.bottom && crop.bottom <= 1.0 && crop.left >= 0.0 &&
                    crop.left < crop.right && crop.right <= 1.0)) {
    throw Error(Errc::invalid_parameter, "crop fractions must satisfy 0 <= top < bottom <= 1 and 0 <= left < right <= 1");
  }
}

double dee(double abs_rel, double d1) noexcept { return (abs_rel - d1 + 1.0) / 2.0; }

void NeumaierSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(Errc::empty_evaluation, "median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

namespace {

int crop_edge(double fraction, int n) { return static_cast<int>(std::floor(fraction * n + 1e-9)); }

DepthMap resample(const DepthMap& pred, int width, int height) {
  Plane values(pred.width(), pred.height());
  auto v = values.values();
  const auto src = pred.values();
  const auto mask = pred.valid_mask();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mask[i] ? src[i] : 0.0f;
  const Plane out = resize(values, width, height, ResizeMode::bilinear);
  std::vector<float> data(out.values().begin(), out.values().end());
  std::vector<std::uint8_t> valid(data.size(), 1);
  return DepthMap(width, height, std::move(data), std::move(valid));
}

}  // namespace

DepthScores compute_scores(const DepthMap& pred_in, const DepthMap& gt, const EvalProtocol& proto) {
  proto.validate();
  DepthMap resized;
  const DepthMap* pred = &pred_in;
  if (pred_in.width() != gt.width() || pred_in.height() != gt.height()) {
    if (!proto.resize_prediction) {
      throw Error(Errc::shape_mismatch, "prediction " + std::to_string(pred_in.width()) + "x" +
                                            std::to_string(pred_in.height()) + " vs ground truth " +
                                            std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
    }
    resized = resample(pred_in, gt.width(), gt.height());
    pred = &resized;
  }

  int y0 = 0, y1 = gt.height(), x0 = 0, x1 = gt.width();
  if (proto.use_crop) {
    y0 = crop_edge(proto.crop.top, gt.height());
    y1 = crop_edge(proto.crop.bottom, gt.height());
    x0 = crop_edge(proto.crop.left, gt.width());
    x1 = crop_edge(proto.crop.right, gt.width());
  }

  std::vector<double> g;
  std::vector<double> p;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (!gt.valid(x, y) || !pred->valid(x, y)) continue;
      const double gv = gt.value(x, y);
      if (!(gv > 0.0) || !std::isfinite(gv)) {
        throw Error(Errc::invalid_depth, "non-positive ground truth at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      if (gv < proto.min_depth || gv > proto.max_depth) continue;
      const double pv = pred->value(x, y);
      if (!(pv > 0.0) || !std::isfinite(pv)) {
        throw Error(Errc::invalid_depth, "non-positive prediction at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      g.push_back(gv);
      p.push_back(pv);
    }
  }
  if (g.empty()) throw Error(Errc::empty_evaluation, "no valid pixels inside the crop and depth range");

  if (proto.median_scaling) {
    const double ratio = median(g) / median(p);
    for (double& v : p) v *= ratio;
  }
  for (double& v : p) v = std::clamp(v, proto.min_depth, proto.max_depth);

  NeumaierSum abs_rel, sq_rel, sq, sq_log;
  std::size_t a1 = 0, a2 = 0, a3 = 0;
  const double t1 = 1.25, t2 = 1.25 * 1.25, t3 = 1.25 * 1.25 * 1.25;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double diff = g[i] - p[i];
    abs_rel.add(std::abs(diff) / g[i]);
    sq_rel.add(diff * diff / g[i]);
    sq.add(diff * diff);
    const double dl = std::log(g[i]) - std::log(p[i]);
    sq_log.add(dl * dl);
    const double ratio = std::max(g[i] / p[i], p[i] / g[i]);
    a1 += ratio < t1;
    a2 += ratio < t2;
    a3 += ratio < t3;
  }
  const double n = static_cast<double>(g.size());
  DepthScores s;
  s.abs_rel = abs_rel.value() / n;
  s.sq_rel = sq_rel.value() / n;
  s.rmse = std::sqrt(sq.value() / n);
  s.rmse_log = std::sqrt(sq_log.value() / n);
  s.d1 = static_cast<double>(a1) / n;
  s.d2 = static_cast<double>(a2) / n;
  s.d3 = static_cast<double>(a3) / n;
  s.dee = dee(s.abs_rel, s.d1);
  s.count = g.size();
  return s;
}

DepthScores aggregate_set(std::span<const DepthScores> scores) {
  if (scores.empty()) throw Error(Errc::empty_evaluation, "cannot aggregate an empty score list");
  NeumaierSum abs_rel, sq_rel, rmse, rmse_log, d1, d2, d3;
  std::size_t count = 0;
  for (const auto& s : scores) {
    abs_rel.add(s.abs_rel);
    sq_rel.add(s.sq_rel);
    rmse.add(s.rmse);
    rmse_log.add(s.rmse_log);
    d1.add(s.d1);
    d2.add(s.d2);
    d3.add(s.d3);
    count += s.count;
  }
  const double n = static_cast<double>(scores.size());
  DepthScores out;
  out.abs_rel = abs_rel.value() / n;
  out.sq_rel = sq_rel.value() / n;
  out.rmse = rmse.value() / n;
  out.rmse_log = rmse_log.value() / n;
  out.d1 = d1.value() / n;
  out.d2 = d2.value() / n;
  out.d3 = d3.value() / n;
  out.dee = dee(out.abs_rel, out.d1);
  out.count = count;
  return out;
}

}  // namespace depthbench
