#pragma once

#include <random>

#include "chg/triples.hpp"

namespace chg {

using Rng = std::mt19937_64;

Vec3 random_vector(Rng& rng);
// a point of the given sign at bounded distance from the origin (spread < ~3)
Point random_point(Rng& rng, int sign, double spread = 1.0);
Mat3 random_lie(Rng& rng, double scale = 1.0);
Mat3 random_isometry(Rng& rng, double scale = 1.0);

// the admissible sign patterns of strongly regular triples
const std::array<Signs, 4>& sign_patterns();

// random (alpha, beta) admissible for the pattern; alpha = 0 only for the all-negative pattern when real
std::pair<double, double> random_invariants(Rng& rng, const Signs& sigma, bool real = false);
// random admissible coordinates with the given invariants
SCoords random_coords(Rng& rng, const Signs& sigma, double alpha, double beta);
Triple random_strongly_regular(Rng& rng, const Signs& sigma, bool real = false);

} // namespace chg
