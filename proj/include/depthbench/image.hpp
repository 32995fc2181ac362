#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace depthbench {

/// Non-owning view of an interleaved float raster. Kernels are written against
/// views so the same code serves RGB images and single-channel fields.
struct RasterView {
  float* data = nullptr;
  int width = 0;
  int height = 0;
  int channels = 0;

  float* row(int y) const { return data + static_cast<std::size_t>(y) * width * channels; }
  std::size_t size() const { return static_cast<std::size_t>(width) * height * channels; }
};

struct ConstRasterView {
  const float* data = nullptr;
  int width = 0;
  int height = 0;
  int channels = 0;

  ConstRasterView() = default;
  ConstRasterView(const float* d, int w, int h, int c) : data(d), width(w), height(h), channels(c) {}
  ConstRasterView(RasterView v) : data(v.data), width(v.width), height(v.height), channels(v.channels) {}

  const float* row(int y) const { return data + static_cast<std::size_t>(y) * width * channels; }
  std::size_t size() const { return static_cast<std::size_t>(width) * height * channels; }
};

/// Float RGB raster, row-major, interleaved, samples nominally in [0,1].
class ImageBuffer {
 public:
  static constexpr int kChannels = 3;

  ImageBuffer() = default;
  ImageBuffer(int width, int height, float fill = 0.0f);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return kChannels; }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }
  bool empty() const noexcept { return data_.empty(); }

  float& at(int x, int y, int c) { return data_[index(x, y, c)]; }
  float at(int x, int y, int c) const { return data_[index(x, y, c)]; }

  std::span<float> samples() noexcept { return data_; }
  std::span<const float> samples() const noexcept { return data_; }

  RasterView view() noexcept { return {data_.data(), width_, height_, kChannels}; }
  ConstRasterView view() const noexcept { return {data_.data(), width_, height_, kChannels}; }

  /// Clamp every sample into [0,1]; NaN becomes 0.
  void clamp01() noexcept;

  bool operator==(const ImageBuffer&) const = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

/// Single-channel float field (fractal maps, displacement fields, masks).
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, float fill = 0.0f);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  float& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  float at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  std::span<float> values() noexcept { return data_; }
  std::span<const float> values() const noexcept { return data_; }

  RasterView view() noexcept { return {data_.data(), width_, height_, 1}; }
  ConstRasterView view() const noexcept { return {data_.data(), width_, height_, 1}; }

  bool operator==(const Plane&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

/// Square odd-sized convolution kernel, row-major weights.
class Kernel2D {
 public:
  Kernel2D(int size, std::vector<float> weights);

  static Kernel2D identity();
  static Kernel2D box(int size);
  /// Disk of the given radius (pixels whose centre lies within the radius).
  static Kernel2D disk(double radius);

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  float at(int dx, int dy) const { return weights_[static_cast<std::size_t>(dy + radius()) * size_ + (dx + radius())]; }
  std::span<const float> weights() const noexcept { return weights_; }

  double sum() const noexcept;
  bool is_normalized(double tolerance = 1e-6) const noexcept;
  /// Rescale so the weights sum to one.
  void normalize();

 private:
  int size_;
  std::vector<float> weights_;
};

/// 8-bit quantisation convention shared by every codec: round(x * 255).
std::uint8_t quantize_sample(float value) noexcept;
std::vector<std::uint8_t> to_bytes(const ImageBuffer& image);
ImageBuffer from_bytes(std::span<const std::uint8_t> bytes, int width, int height);

}  // namespace depthbench
