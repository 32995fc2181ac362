#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace depthbench {

/// Depth raster in metres with a validity mask.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height, float fill = 0.0f);
  /// valid is derived as value > 0 when no mask is given.
  DepthMap(int width, int height, std::vector<float> values);
  DepthMap(int width, int height, std::vector<float> values, std::vector<std::uint8_t> valid);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  float value(int x, int y) const { return values_[index(x, y)]; }
  bool valid(int x, int y) const { return valid_[index(x, y)] != 0; }
  void set(int x, int y, float v, bool is_valid = true) {
    values_[index(x, y)] = v;
    valid_[index(x, y)] = is_valid ? 1 : 0;
  }
  std::span<const float> values() const noexcept { return values_; }
  std::span<const std::uint8_t> valid_mask() const noexcept { return valid_; }
  std::size_t valid_count() const noexcept;

 private:
  std::size_t index(int x, int y) const noexcept { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
  std::vector<std::uint8_t> valid_;
};

/// Fractional crop rectangle [top, bottom) × [left, right) of the frame.
struct CropRect {
  double top = 0.0;
  double bottom = 1.0;
  double left = 0.0;
  double right = 1.0;
};

struct EvalProtocol {
  double min_depth = 1e-3;
  double max_depth = 80.0;
  bool use_crop = false;
  CropRect crop;
  bool median_scaling = false;
  /// Bilinearly resample a prediction whose size differs from the ground truth.
  bool resize_prediction = true;

  /// 1e-3..80 m, Garg crop, median scaling.
  static EvalProtocol kitti();
  /// 1e-3..10 m, Eigen centre crop, no scaling.
  static EvalProtocol nyu();
  /// Throws invalid_parameter unless 0 < min_depth < max_depth and the crop is well formed.
  void validate() const;
};

struct DepthScores {
  double abs_rel = 0.0;
  double sq_rel = 0.0;
  double rmse = 0.0;
  double rmse_log = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double dee = 0.0;
  /// Pixels that entered the evaluation.
  std::size_t count = 0;
};

/// (abs_rel - d1 + 1) / 2.
double dee(double abs_rel, double d1) noexcept;

/// Pixels enter when gt and pred are valid, inside the crop, and gt lies in
/// [min_depth, max_depth]. pred is median-scaled if requested, then clamped to
/// the depth range. Throws shape_mismatch, empty_evaluation or invalid_depth.
DepthScores compute_scores(const DepthMap& pred, const DepthMap& gt, const EvalProtocol& proto);

/// Per-image mean of each field; dee recomputed from the means.
DepthScores aggregate_set(std::span<const DepthScores> scores);

/// numpy-style median (mean of the two middle values for even counts).
double median(std::vector<double> values);

/// Compensated (Neumaier) running sum.
class NeumaierSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace depthbench
