#pragma once

// Marching-squares level sets of a grid field and the per-level integrals
// used by the coarea checks.

#include "freebound/field.hpp"

namespace freebound::contour {

struct LevelStats {
  double t = 0.0;
  double surface = 0.0;          // total contour length
  double coarea_integral = 0.0;  // sum over components of the integral of 1/|grad f|
  double flux_p = 0.0;           // sum over components of the integral of |grad f|^{p-1}
  int components = 0;
  // False when |grad f| < 1e-8 at some quadrature point on the contour.
  bool reliable = true;
};

// Contours run through cell centers; outside the mask the ghost values
// continue the field, and contour pieces are kept only inside active cells.
// Gradients come from the bilinear interpolant of each square, integrated
// with two-point Gauss quadrature per segment.
LevelStats level_stats(const field::ScalarField& f, double t, double p);

}  // namespace freebound::contour
