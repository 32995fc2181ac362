#pragma once

#include <cstdint>
#include <vector>

#include "depthbench/image.hpp"

namespace depthbench::testing {

/// Procedural street-like scene: sky gradient, textured ground, boxes and
/// blobs, mild grain, quantised to 8 bits. Same index, same image.
ImageBuffer synthetic_scene(std::uint64_t index, int width, int height);

std::vector<ImageBuffer> synthetic_corpus(int count, int width, int height);

}  // namespace depthbench::testing
