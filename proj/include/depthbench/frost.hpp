#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>

#include "depthbench/image.hpp"

namespace depthbench {

/// Supplier of frost overlay textures. apply_weather picks a variant with the
/// image rng and crops a frame-sized window from it.
class FrostSource {
 public:
  virtual ~FrostSource() = default;

  virtual std::size_t variant_count() const = 0;
  /// Texture at least min_width × min_height. Must be deterministic and thread-safe.
  virtual std::shared_ptr<const ImageBuffer> texture(std::size_t variant, int min_width, int min_height) const = 0;
  /// Identifies the asset set in manifests.
  virtual std::uint64_t identity_hash() const = 0;
  virtual std::string description() const = 0;
};

/// Synthesised overlays: band-limited noise thresholded into crystals, plus
/// thin bright streaks, tinted blue-white. Six fixed variants.
class ProceduralFrost final : public FrostSource {
 public:
  static constexpr std::size_t kVariants = 6;

  std::size_t variant_count() const override { return kVariants; }
  std::shared_ptr<const ImageBuffer> texture(std::size_t variant, int min_width, int min_height) const override;
  std::uint64_t identity_hash() const override;
  std::string description() const override { return "procedural:v1"; }

  /// Shared default instance.
  static const ProceduralFrost& instance();

 private:
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<std::size_t, int, int>, std::shared_ptr<const ImageBuffer>> cache_;
};

/// Texture synthesis used by ProceduralFrost, exposed for tests.
ImageBuffer synthesize_frost(std::size_t variant, int width, int height);

}  // namespace depthbench
