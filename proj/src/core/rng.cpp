#include "depthbench/rng.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace depthbench {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t hash) noexcept {
  for (std::uint8_t b : bytes) {
    hash ^= b;
    hash *= kFnvPrime;
  }
  return hash;
}

std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash) noexcept {
  for (char c : text) {
    hash ^= static_cast<std::uint8_t>(c);
    hash *= kFnvPrime;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed_root, std::string_view relative_path, CorruptionKind kind,
                          int severity) noexcept {
  std::uint8_t root[8];
  for (int i = 0; i < 8; ++i) root[i] = static_cast<std::uint8_t>(seed_root >> (8 * i));
  std::uint64_t h = fnv1a64(std::span<const std::uint8_t>(root, 8));
  h = fnv1a64(relative_path, h);
  const std::uint8_t tail[2] = {static_cast<std::uint8_t>(kind), static_cast<std::uint8_t>(severity)};
  h = fnv1a64(std::span<const std::uint8_t>(tail, 2), h);
  return splitmix64_mix(h);
}

std::uint64_t DeterministicRng::next_u64() noexcept {
  state_ += 0x9e3779b97f4a7c15ULL;
  return splitmix64_mix(state_);
}

double DeterministicRng::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int DeterministicRng::uniform_int(int lo, int hi) noexcept {
  const double span = static_cast<double>(hi) - lo + 1.0;
  const int v = lo + static_cast<int>(std::floor(uniform() * span));
  return v > hi ? hi : v;
}

double DeterministicRng::normal() noexcept {
  const double u1 = 1.0 - uniform();  // (0,1], keeps log finite
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t DeterministicRng::poisson(double mean) noexcept {
  if (!(mean > 0.0)) return 0;
  if (mean < 10.0) {
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    while (u >= cdf && k < 1000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  const double v = std::floor(mean + std::sqrt(mean) * normal() + 0.5);
  return v < 0.0 ? 0 : static_cast<std::int64_t>(v);
}

}  // namespace depthbench
