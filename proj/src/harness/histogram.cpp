#include "depthbench/histogram.hpp"

#include <omp.h>

#include "depthbench/csv.hpp"
#include "depthbench/error.hpp"
#include "depthbench/image_io.hpp"
#include "depthbench/kernels.hpp"

namespace depthbench {

PixelHistogram::PixelHistogram(int bin_count) : bins(bin_count) {
  if (bins < 1 || bins > 65536) throw Error(Errc::invalid_parameter, "bins must lie in [1, 65536]");
  for (auto& c : counts) c.assign(static_cast<std::size_t>(bins), 0);
}

void PixelHistogram::add(const ImageBuffer& image) {
  std::vector<std::uint64_t> local(static_cast<std::size_t>(bins) * 3);
  kernels::parallel::histogram(image.view(), bins, local);
  for (int c = 0; c < 3; ++c) {
    for (int b = 0; b < bins; ++b) counts[c][b] += local[static_cast<std::size_t>(c) * bins + b];
  }
  ++images;
}

std::uint64_t PixelHistogram::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& c : counts) {
    for (auto v : c) t += v;
  }
  return t;
}

double PixelHistogram::mean(int channel) const {
  double n = 0.0, s = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double w = static_cast<double>(counts[channel][b]);
    n += w;
    s += w * (b + 0.5) / bins;
  }
  return n > 0.0 ? s / n : 0.0;
}

double PixelHistogram::variance(int channel) const {
  const double m = mean(channel);
  double n = 0.0, s = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double w = static_cast<double>(counts[channel][b]);
    const double d = (b + 0.5) / bins - m;
    n += w;
    s += w * d * d;
  }
  return n > 0.0 ? s / n : 0.0;
}

std::string PixelHistogram::to_csv() const {
  std::string out = csv_line({"bin", "lower", "upper", "r", "g", "b"});
  for (int b = 0; b < bins; ++b) {
    out += csv_line({std::to_string(b), format_double(static_cast<double>(b) / bins),
                     format_double(static_cast<double>(b + 1) / bins), std::to_string(counts[0][b]),
                     std::to_string(counts[1][b]), std::to_string(counts[2][b])});
  }
  return out;
}

PixelHistogram pixel_histogram(const std::filesystem::path& dir, int bins, int jobs) {
  PixelHistogram total(bins);
  std::vector<std::string> files;
  try {
    files = list_images(dir);
  } catch (const Error& e) {
    throw Error(Errc::empty_input, e.message());
  }
  if (files.empty()) throw Error(Errc::empty_input, "no PNG or JPEG images under " + dir.string());
  std::vector<PixelHistogram> parts(files.size(), PixelHistogram(bins));
  std::vector<std::string> errors(files.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < files.size(); ++i) {
    try {
      parts[i].add(read_image(dir / files[i]));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) throw Error(Errc::io_error, errors[i]);
    for (int c = 0; c < 3; ++c) {
      for (int b = 0; b < bins; ++b) total.counts[c][b] += parts[i].counts[c][b];
    }
    total.images += 1;
  }
  return total;
}

}  // namespace depthbench
