#pragma once

#include "depthbench/image.hpp"
#include "depthbench/rng.hpp"

namespace depthbench {

/// Diamond-square heightmap on a size×size torus, min-max normalised to [0,1].
/// The perturbation amplitude starts at 100 and is divided by wibbledecay
/// after every level. size must be 2^k with k >= 3 and wibbledecay > 1.
Plane plasma_fractal(int size, double wibbledecay, DeterministicRng& rng);

/// Smallest power of two >= n (and >= 8).
int plasma_size_for(int n) noexcept;

}  // namespace depthbench
