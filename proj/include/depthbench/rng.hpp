#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "depthbench/corruption_kind.hpp"

namespace depthbench {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t hash = kFnvOffsetBasis) noexcept;
std::uint64_t fnv1a64(std::string_view text, std::uint64_t hash = kFnvOffsetBasis) noexcept;

/// Sixteen lower-case hex digits.
std::string hex64(std::uint64_t value);

/// SplitMix64 output finaliser.
std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Per-image stream seed. Hashes seed_root (8 bytes little-endian), the path
/// bytes, the kind id byte and the severity byte with FNV-1a, then applies one
/// SplitMix64 finalisation. Golden values are frozen in the tests.
std::uint64_t derive_seed(std::uint64_t seed_root, std::string_view relative_path, CorruptionKind kind,
                          int severity) noexcept;

/// SplitMix64 stream. Not thread-safe; one instance per image task.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t state() const noexcept { return state_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform in [0,1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) noexcept;
  /// Standard normal via Box-Muller. Each call consumes two uniforms.
  double normal() noexcept;
  double normal(double mean, double stddev) noexcept { return mean + stddev * normal(); }
  /// Inverse transform below mean 10, rounded normal approximation above.
  std::int64_t poisson(double mean) noexcept;

 private:
  std::uint64_t state_;
};

}  // namespace depthbench
