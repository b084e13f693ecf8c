#pragma once

// Distribution functions, decreasing and radial rearrangements, and numerical
// checks of the coarea identities and rearrangement inequalities.

#include <memory>
#include <vector>

#include "freebound/contour.hpp"
#include "freebound/field.hpp"

namespace freebound::rearrange {

using contour::LevelStats;
using field::ScalarField;

// Measure of {f > t} counted in cells.
double distribution_function(const ScalarField& f, double t);

// f#(s) on [0, |mask|]: the k-th largest cell value sits at s = (k + 1/2) h^2,
// linear in between and constant beyond the first and last samples.
class DecreasingProfile {
 public:
  explicit DecreasingProfile(const ScalarField& f);

  double measure() const noexcept { return measure_; }
  double operator()(double s) const;
  const std::vector<double>& levels() const noexcept { return levels_; }
  double breakpoint(std::size_t k) const noexcept { return (static_cast<double>(k) + 0.5) * cell_; }

 private:
  std::vector<double> levels_;  // nonincreasing
  double cell_;
  double measure_;
};

DecreasingProfile decreasing_rearrangement(const ScalarField& f);

// Radially nonincreasing rearrangement on a disk centered at the origin whose
// area equals the mask area of the source.
struct RadialField {
  double radius;
  DecreasingProfile profile;
  ScalarField field;

  double operator()(geometry::Point x) const;
};

RadialField radial_rearrangement(const ScalarField& f);

LevelStats level_stats(const ScalarField& f, double t, double p);

// (sum |grad f|^p h^2)^{1/p} with the field's ghost values.
double gradient_lp_norm(const ScalarField& f, double p);

// count levels at interior quantiles of the cell values, strictly between the
// minimum and maximum.
std::vector<double> quantile_levels(const ScalarField& f, int count);

// count levels at bin midpoints of [min + margin r, max - margin r], where r
// is the value range. Independent of the grid, so suited to refinement studies.
std::vector<double> uniform_levels(const ScalarField& f, int count, double margin = 0.05);

struct CoareaSlopeRow {
  double t;
  double measure;         // mu(t)
  double inverse_slope;   // 1 / |f#'(mu(t))|
  double coarea_integral;
  double relative_deviation;
};

struct CoareaSlopeReport {
  std::vector<CoareaSlopeRow> rows;
  double max_relative_deviation = 0.0;
  int skipped = 0;  // unreliable or too close to the ends of the profile
};

// Compares 1/|f#'(mu(t))| = |mu'(t)| against the contour sum per level.
// mu' is the least-squares slope of mu over [t - dt, t + dt] with
// dt = window * (max f - min f), clipped to half the distance to either end.
CoareaSlopeReport check_coarea_slope(const ScalarField& f, const std::vector<double>& levels,
                                     double window = 0.05);

struct InequalitySides {
  double lhs;
  double rhs;
  bool holds(double tol) const { return lhs <= rhs * (1.0 + tol) + 1e-300; }
};

// (contour integral of 1/|grad f|)^{1-p} versus S^{-p} times the flux integral.
InequalitySides check_level_holder(const ScalarField& f, double t, double p);

// Integral over z of |df#/dz|^p S(f#(z))^p on equal-measure bins versus
// the integral of |grad f|^p. Bins with unreliable levels are skipped.
InequalitySides check_profile_energy(const ScalarField& f, double p, int bins = 128);

// Gradient p-energy of the radial rearrangement versus 2^{p/2} times that of
// the field. Throws PreconditionError when the free boundary is not concave,
// the fixed trace is nonzero, or p <= 1.
InequalitySides check_rearrangement_energy(const ScalarField& f, double p);

}  // namespace freebound::rearrange
