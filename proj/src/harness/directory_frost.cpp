#include "depthbench/directory_frost.hpp"

#include <cmath>

#include "depthbench/error.hpp"
#include "depthbench/image_io.hpp"
#include "depthbench/imageops.hpp"
#include "depthbench/rng.hpp"

namespace depthbench {

DirectoryFrost::DirectoryFrost(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) {
    throw Error(Errc::missing_asset, "frost asset directory " + dir_.string() + " does not exist");
  }
  const auto files = list_images(dir_);
  if (files.empty()) throw Error(Errc::missing_asset, "no frost images in " + dir_.string());
  hash_ = kFnvOffsetBasis;
  for (const auto& rel : files) {
    auto img = std::make_shared<const ImageBuffer>(read_image(dir_ / rel));
    hash_ = fnv1a64(rel, hash_);
    const std::uint64_t h = content_hash(*img);
    for (int b = 0; b < 8; ++b) {
      const std::uint8_t byte = static_cast<std::uint8_t>(h >> (8 * b));
      hash_ = fnv1a64(std::span(&byte, 1), hash_);
    }
    images_.push_back(std::move(img));
  }
}

std::shared_ptr<const ImageBuffer> DirectoryFrost::texture(std::size_t variant, int min_width, int min_height) const {
  if (variant >= images_.size()) throw Error(Errc::missing_asset, "frost variant out of range");
  const auto& base = images_[variant];
  if (base->width() >= min_width && base->height() >= min_height) return base;
  const double s = std::max(static_cast<double>(min_width) / base->width(),
                            static_cast<double>(min_height) / base->height());
  const int w = std::max(min_width, static_cast<int>(std::ceil(base->width() * s)));
  const int h = std::max(min_height, static_cast<int>(std::ceil(base->height() * s)));
  const auto key = std::make_tuple(variant, w, h);
  std::lock_guard lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, std::make_shared<const ImageBuffer>(resize(*base, w, h, ResizeMode::bilinear))).first;
  }
  return it->second;
}

}  // namespace depthbench
