#pragma once

// Built-in test domains and random generators of domains whose free
// boundary is concave with respect to the interior.

#include <cstdint>
#include <random>
#include <vector>

#include "freebound/geometry.hpp"

namespace freebound::domains {

using geometry::LabeledDomain;

// Upper half-disk centered at the origin; the diameter is free, the arc fixed.
LabeledDomain half_disk(double radius = 1.0, int arc_segments = 64);
// [0,1]^2; the bottom edge is free when bottom_free is set.
LabeledDomain unit_square(bool bottom_free);
// All-fixed regular polygon inscribed in a circle.
LabeledDomain disk(double radius = 1.0, int segments = 64);
// [0,2]x[0,1] union [0,1]x[1,2] with a free bottom edge.
LabeledDomain l_shape();
// [-1,1]^2 minus the centered square of side 1; the inner square is free.
LabeledDomain square_annulus();
// Vertices (0,0), (2,0), (2,1), (0,2) with a free bottom edge.
LabeledDomain right_trapezoid();
// Uniformly scaled copy.
LabeledDomain scaled(const LabeledDomain& domain, double factor);

enum class RandomFamily : std::uint8_t {
  kBittenConvex,  // convex polygon minus a convex bite with a free rim
  kFlatBase,      // free straight base under a star-shaped fixed cap
  kEllipseShell,  // polar sector outside an ellipse, free inner arc
};

// Draws one domain of the given family. The free chain is concave by
// construction.
LabeledDomain random_concave_domain(std::mt19937_64& rng, RandomFamily family);

// count domains cycling through all families.
std::vector<LabeledDomain> random_concave_suite(std::uint64_t seed, int count);

}  // namespace freebound::domains
