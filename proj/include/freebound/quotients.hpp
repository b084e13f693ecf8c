#pragma once

// Sobolev and Moser-Trudinger functionals on grid fields, concentration
// probes, and the closed-form blow-up bounds for non-concave free boundaries.

#include <optional>
#include <vector>

#include "freebound/field.hpp"
#include "freebound/geometry.hpp"

namespace freebound::quotients {

using field::ScalarField;
using geometry::LabeledDomain;
using geometry::Point;

// (sum |u|^q h^2)^{1/q}
double lp_norm(const ScalarField& f, double q);

struct SobolevReport {
  double p;
  double p_star;
  double grad_norm;
  double lp_star_norm;
  double quotient;  // grad_norm / lp_star_norm
  double bound;     // 1 / (sqrt(2) k(2, p))
  double margin;    // quotient - bound
};

// Requires 1 < p < 2, a nonzero field with zero fixed trace, and a concave
// free boundary (PreconditionError otherwise; ValidationError for u = 0).
SobolevReport sobolev_report(const ScalarField& f, double p);

enum class BubbleTruncation {
  // Subtract the profile value at the nearest fixed point and clamp at 0.
  kShift,
  // Multiply by a quintic cutoff vanishing near the fixed boundary.
  kCutoff,
};

struct BubbleOptions {
  BubbleTruncation truncation = BubbleTruncation::kShift;
  // Cutoff width as a fraction of the inradius (kCutoff only).
  double cutoff_fraction = 0.2;
};

// (1 + (r/eps)^{p/(p-1)})^{-(2-p)/p}, truncated so the fixed trace vanishes.
// The default center is the midpoint of the free chain's end points.
ScalarField talenti_bubble(std::shared_ptr<const raster::RasterGrid> grid, double p, double epsilon,
                           std::optional<Point> center = std::nullopt, const BubbleOptions& options = {});

// Radial profile before the cutoff.
double talenti_profile(double r, double p, double epsilon);

struct MoserReport {
  double energy;     // sum |grad u|^2 h^2
  double grad_norm;  // sqrt(energy)
  double functional;  // sum exp(2 pi u^2) h^2 over the domain
  double area;
  // Same functional written through the rearrangement: sum over the disk of
  // exp(4 pi (u* / sqrt 2)^2) h^2. Reported as the comparison value C_*.
  double rearranged_functional;
  double rearranged_energy;  // (1/2) sum |grad u*|^2 h^2
  double identity_deviation;  // |functional - rearranged_functional| / functional
};

// PreconditionError if the energy exceeds 1 + energy_tol or the fixed trace
// is nonzero.
MoserReport moser_report(const ScalarField& f, double energy_tol = 1e-9);

struct CounterexampleParams {
  double a;
  double tau0 = 0.01;
  // ln(1/lambda); must exceed a^2. Defaults to 2 a^2 when unset.
  std::optional<double> log_inv_lambda;

  double resolved_log_inv_lambda() const { return log_inv_lambda.value_or(2.0 * a * a); }
};

// Throws DomainError unless a > 1, 0 < tau0 <= 1/100 and ln(1/lambda) > a^2.
void validate(const CounterexampleParams& params);

// Free chain on the parabola y = a x^2 between (+-a^{-1/3}, a^{1/3}), closed
// by a fixed cap; total area 1.
LabeledDomain counterexample_domain(const CounterexampleParams& params, int segments = 64);

struct BlowupRow {
  double a;
  double tau0;
  double log_inv_lambda;
  // tau0 ln(a / tau0) / (pi ln(1/lambda)); kept separately because 1 - deficit
  // rounds to 1 for large a.
  double energy_deficit;
  double energy_bound;            // 1 - energy_deficit
  double functional_lower_bound;  // pi exp(2 tau0 ln(a / tau0) / pi)
};

std::vector<BlowupRow> counterexample_blowup(const std::vector<CounterexampleParams>& params_list);

struct BlowupCheck {
  bool increasing = true;
  bool energy_in_range = true;
};

BlowupCheck check_blowup(const std::vector<BlowupRow>& rows);

}  // namespace freebound::quotients
