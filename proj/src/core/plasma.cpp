#include "depthbench/plasma.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "depthbench/error.hpp"

namespace depthbench {

int plasma_size_for(int n) noexcept {
  int s = 8;
  while (s < n) s *= 2;
  return s;
}

Plane plasma_fractal(int size, double wibbledecay, DeterministicRng& rng) {
  if (size < 8 || (size & (size - 1)) != 0) {
    throw Error(Errc::invalid_parameter, "plasma size must be a power of two >= 8, got " + std::to_string(size));
  }
  if (!(wibbledecay > 1.0)) {
    throw Error(Errc::invalid_parameter, "plasma wibbledecay must exceed 1, got " + std::to_string(wibbledecay));
  }
  const int n = size;
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int r, int c) -> double& { return m[static_cast<std::size_t>(r) * n + c]; };
  double wibble = 100.0;
  auto wibbled = [&](double sum) { return sum / 4.0 + wibble * rng.uniform(-wibble, wibble); };

  for (int step = n; step >= 2; step /= 2) {
    const int h = step / 2;
    const int cells = n / step;
    auto wrap = [cells](int i) { return (i % cells + cells) % cells; };

    // squares: centre of each cell from its four corners
    for (int a = 0; a < cells; ++a) {
      for (int b = 0; b < cells; ++b) {
        const double s = at(a * step, b * step) + at(wrap(a + 1) * step, b * step) + at(a * step, wrap(b + 1) * step) +
                         at(wrap(a + 1) * step, wrap(b + 1) * step);
        at(a * step + h, b * step + h) = wibbled(s);
      }
    }
    // diamonds on the corner rows
    for (int a = 0; a < cells; ++a) {
      for (int b = 0; b < cells; ++b) {
        const double s = at(a * step + h, b * step + h) + at(wrap(a - 1) * step + h, b * step + h) +
                         at(a * step, b * step) + at(a * step, wrap(b + 1) * step);
        at(a * step, b * step + h) = wibbled(s);
      }
    }
    // diamonds on the corner columns
    for (int a = 0; a < cells; ++a) {
      for (int b = 0; b < cells; ++b) {
        const double s = at(a * step + h, b * step + h) + at(a * step + h, wrap(b - 1) * step + h) +
                         at(a * step, b * step) + at(wrap(a + 1) * step, b * step);
        at(a * step + h, b * step) = wibbled(s);
      }
    }
    wibble /= wibbledecay;
  }

  const auto [lo_it, hi_it] = std::minmax_element(m.begin(), m.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  Plane out(n, n);
  auto values = out.values();
  for (std::size_t i = 0; i < m.size(); ++i) {
    values[i] = range > 0.0 ? static_cast<float>((m[i] - lo) / range) : 0.0f;
  }
  return out;
}

}  // namespace depthbench
