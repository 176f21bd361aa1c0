#pragma once

#include <random>

#include "fracgs/grid.hpp"

namespace fracgs {

/// Gaussian bump with wrapped (nearest-image) distance so the seam stays smooth.
Field gaussian_bump(const GridPtr& g, double center, double width, double amplitude);

/// Seeded random bump: center in [-L/2, L/2], width in [0.5, 2], amplitude in [0.5, 1.5].
Field random_gaussian_bump(const GridPtr& g, std::mt19937_64& rng);

/// Smooth random field: white noise low-passed by exp(-(k/k_cut)^2), unit peak.
Field random_smooth_field(const GridPtr& g, std::mt19937_64& rng, double k_cut);

StatePair random_smooth_state(const GridPtr& g, std::mt19937_64& rng, double k_cut);

}  // namespace fracgs
