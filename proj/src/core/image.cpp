#include "depthbench/image.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "depthbench/error.hpp"

namespace depthbench {

ImageBuffer::ImageBuffer(int width, int height, float fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(Errc::invalid_parameter,
                "image dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  }
  data_.assign(static_cast<std::size_t>(width) * height * kChannels, fill);
}

void ImageBuffer::clamp01() noexcept {
  for (float& v : data_) {
    v = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
  }
}

Plane::Plane(int width, int height, float fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(Errc::invalid_parameter,
                "plane dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  }
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Kernel2D::Kernel2D(int size, std::vector<float> weights) : size_(size), weights_(std::move(weights)) {
  if (size < 1 || size % 2 == 0) {
    throw Error(Errc::invalid_kernel, "kernel size must be odd and positive, got " + std::to_string(size));
  }
  if (weights_.size() != static_cast<std::size_t>(size) * size) {
    throw Error(Errc::invalid_kernel, "kernel weight count does not match size");
  }
}

Kernel2D Kernel2D::identity() { return Kernel2D(1, {1.0f}); }

Kernel2D Kernel2D::box(int size) {
  const auto n = static_cast<std::size_t>(size) * size;
  return Kernel2D(size, std::vector<float>(n, 1.0f / static_cast<float>(n)));
}

Kernel2D Kernel2D::disk(double radius) {
  if (!(radius >= 0.0)) throw Error(Errc::invalid_parameter, "disk radius must be non-negative");
  const int r = static_cast<int>(std::ceil(radius));
  const int size = 2 * r + 1;
  std::vector<float> w(static_cast<std::size_t>(size) * size, 0.0f);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) w[static_cast<std::size_t>(dy + r) * size + (dx + r)] = 1.0f;
    }
  }
  Kernel2D k(size, std::move(w));
  k.normalize();
  return k;
}

double Kernel2D::sum() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

bool Kernel2D::is_normalized(double tolerance) const noexcept { return std::abs(sum() - 1.0) < tolerance; }

void Kernel2D::normalize() {
  const double s = sum();
  if (s == 0.0) throw Error(Errc::invalid_kernel, "cannot normalize a zero-sum kernel");
  for (float& w : weights_) w = static_cast<float>(w / s);
}

std::uint8_t quantize_sample(float value) noexcept {
  const float clamped = std::isnan(value) ? 0.0f : std::clamp(value, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::lround(clamped * 255.0f));
}

std::vector<std::uint8_t> to_bytes(const ImageBuffer& image) {
  std::vector<std::uint8_t> out(image.samples().size());
  std::transform(image.samples().begin(), image.samples().end(), out.begin(), quantize_sample);
  return out;
}

ImageBuffer from_bytes(std::span<const std::uint8_t> bytes, int width, int height) {
  ImageBuffer image(width, height);
  if (bytes.size() != image.samples().size()) {
    throw Error(Errc::invalid_parameter, "byte count does not match image dimensions");
  }
  std::transform(bytes.begin(), bytes.end(), image.samples().begin(),
                 [](std::uint8_t b) { return static_cast<float>(b) / 255.0f; });
  return image;
}

}  // namespace depthbench
