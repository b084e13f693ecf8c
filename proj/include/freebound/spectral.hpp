#pragma once

// Five-point Laplacian with Dirichlet conditions on fixed faces and
// reflected (Neumann) stencils on free faces, and its smallest eigenvalue.

#include <Eigen/SparseCore>
#include <cstdint>
#include <iosfwd>
#include <memory>

#include "freebound/raster.hpp"

namespace freebound::spectral {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct SpectralProblem {
  SparseMatrix op;  // symmetric positive semidefinite, scaled by 1/h^2
  std::shared_ptr<const raster::RasterGrid> grid;
  double h = 0.0;
  bool has_fixed = false;
};

// A fixed face contributes 2/h^2 to the diagonal (the ghost value is the odd
// reflection, so the eigenfunction vanishes on the face); a free face
// contributes nothing.
SpectralProblem assemble(const geometry::LabeledDomain& domain, double h);

// Face-difference energy: sum over interior faces of (u_i - u_j)^2 plus
// 2 u_i^2 per fixed face. Equals u^T op u h^2.
double quadratic_form(const SpectralProblem& problem, const Eigen::VectorXd& u);

struct Eigenpair {
  double lambda;
  Eigen::VectorXd vector;  // unit Euclidean norm, nonnegative-majority sign
  int iterations;
  double residual;  // |op v - lambda v| / lambda
};

// Inverse power iteration from a seeded positive random start. Throws
// PreconditionError without fixed faces and ConvergenceError when the
// relative eigenvalue change stays above tol after max_outer iterations.
Eigenpair principal_frequency(const SpectralProblem& problem, double tol = 1e-9,
                              std::uint64_t seed = 0x5EED, int max_outer = 500);

// J_0 by its power series (accurate for |x| <= 10).
double bessel_j0(double x);
// First positive zero of J_0, by bisection.
double first_bessel_zero();
// First Dirichlet eigenvalue of the disk of area 2 * volume, i.e. that of the
// half-disk of area `volume` with a free diameter. DomainError for volume <= 0.
double half_ball_reference(double volume);

struct FrequencyReport {
  double lambda;
  double reference;
  double margin;
  double h;
  int iterations;
  double residual;
  // The free boundary is empty, so concavity holds trivially.
  bool vacuous_concavity;
};

// PreconditionError when the free boundary is not concave.
FrequencyReport check_principal_frequency(const geometry::LabeledDomain& domain, double h, double tol = 1e-9);

// Writes "row col value" lines for the stored upper and lower entries.
void write_coordinate_text(const SpectralProblem& problem, std::ostream& out);

}  // namespace freebound::spectral
