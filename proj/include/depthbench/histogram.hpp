#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "depthbench/image.hpp"

namespace depthbench {

/// Per-channel counts of pixel values over [0,1] split into equal bins.
struct PixelHistogram {
  int bins = 0;
  std::array<std::vector<std::uint64_t>, 3> counts;
  std::size_t images = 0;

  explicit PixelHistogram(int bin_count = 256);
  void add(const ImageBuffer& image);
  std::uint64_t total() const noexcept;
  /// Mean and variance of bin centres weighted by count.
  double mean(int channel) const;
  double variance(int channel) const;
  /// bin,lower,upper,r,g,b
  std::string to_csv() const;
};

/// Every PNG/JPEG below dir. Throws empty_input when there is none.
PixelHistogram pixel_histogram(const std::filesystem::path& dir, int bins, int jobs = 0);

}  // namespace depthbench
