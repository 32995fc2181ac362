#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "depthbench/frost.hpp"

namespace depthbench {

/// Photographic frost overlays from a directory of PNG/JPEG files, in sorted
/// file-name order. A texture smaller than the frame is upscaled bilinearly,
/// keeping its aspect ratio, until it covers the frame.
class DirectoryFrost final : public FrostSource {
 public:
  /// Throws missing_asset when the directory is absent or holds no images.
  explicit DirectoryFrost(std::filesystem::path dir);

  std::size_t variant_count() const override { return images_.size(); }
  std::shared_ptr<const ImageBuffer> texture(std::size_t variant, int min_width, int min_height) const override;
  /// Depends on file names and pixel content, not on where the directory lives.
  std::uint64_t identity_hash() const override { return hash_; }
  std::string description() const override { return "directory:" + dir_.generic_string(); }

  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::shared_ptr<const ImageBuffer>> images_;
  std::uint64_t hash_ = 0;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<std::size_t, int, int>, std::shared_ptr<const ImageBuffer>> cache_;
};

}  // namespace depthbench
