#include "freebound/quotients.hpp"

#include <cmath>
#include <numbers>

#include "freebound/constants.hpp"
#include "freebound/errors.hpp"
#include "freebound/rearrange.hpp"

namespace freebound::quotients {

namespace {

void require_zero_trace(const ScalarField& f) {
  if (f.max_fixed_trace() > 1e-10 * f.max_value()) {
    throw PreconditionError("field does not vanish on the fixed boundary");
  }
}

double energy(const ScalarField& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Point g = f.gradient(k);
    sum += geometry::dot(g, g);
  }
  return sum * f.grid().cell_area();
}

}  // namespace

double lp_norm(const ScalarField& f, double q) {
  if (!(q >= 1.0)) throw DomainError("norm exponent must be at least 1");
  double sum = 0.0;
  for (double v : f.values()) sum += std::pow(std::abs(v), q);
  return std::pow(sum * f.grid().cell_area(), 1.0 / q);
}

SobolevReport sobolev_report(const ScalarField& f, double p) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("Sobolev exponent must lie in (1, 2) in the plane");
  if (!(f.max_value() > 0.0)) throw ValidationError("quotient is undefined for the zero field");
  require_zero_trace(f);
  if (!geometry::is_concave_free_boundary(*f.grid().domain).concave) {
    throw PreconditionError("free boundary is not concave");
  }
  const constants::Dimension two(2);
  SobolevReport r;
  r.p = p;
  r.p_star = constants::critical_exponent(two, p);
  r.grad_norm = rearrange::gradient_lp_norm(f, p);
  r.lp_star_norm = lp_norm(f, r.p_star);
  r.quotient = r.grad_norm / r.lp_star_norm;
  r.bound = 1.0 / (std::sqrt(2.0) * constants::sobolev_best_constant(two, p));
  r.margin = r.quotient - r.bound;
  return r;
}

double talenti_profile(double r, double p, double epsilon) {
  return std::pow(1.0 + std::pow(r / epsilon, p / (p - 1.0)), -(2.0 - p) / p);
}

ScalarField talenti_bubble(std::shared_ptr<const raster::RasterGrid> grid, double p, double epsilon,
                           std::optional<Point> center, const BubbleOptions& options) {
  if (!(p > 1.0 && p < 2.0)) throw DomainError("bubble exponent must lie in (1, 2)");
  if (!(epsilon > 0.0)) throw DomainError("bubble scale must be positive");
  const auto& domain = *grid->domain;
  if (!center) {
    const auto& chain = domain.free_chain();
    if (chain.empty()) {
      const auto box = domain.bounds();
      center = 0.5 * (box.min + box.max);
    } else if (domain.free_chain_closed()) {
      Point sum;
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) sum = sum + chain[k];
      center = (1.0 / static_cast<double>(chain.size() - 1)) * sum;
    } else {
      center = 0.5 * (chain.front() + chain.back());
    }
  }
  const Point c = *center;
  if (options.truncation == BubbleTruncation::kShift) {
    const double reach = domain.distance_to_boundary(c, geometry::EdgeLabel::kFixed);
    const double floor = std::isfinite(reach) ? talenti_profile(reach, p, epsilon) : 0.0;
    return field::sample(std::move(grid), [&](Point x) {
      return std::max(0.0, talenti_profile(geometry::distance(x, c), p, epsilon) - floor);
    });
  }
  const double width = options.cutoff_fraction * field::inradius_estimate(*grid);
  return field::sample(std::move(grid), [&](Point x) {
    return talenti_profile(geometry::distance(x, c), p, epsilon) * field::fixed_cutoff(domain, x, width);
  });
}

MoserReport moser_report(const ScalarField& f, double energy_tol) {
  require_zero_trace(f);
  MoserReport r;
  r.energy = energy(f);
  if (r.energy > 1.0 + energy_tol) {
    throw PreconditionError("Dirichlet energy " + std::to_string(r.energy) + " exceeds 1");
  }
  r.grad_norm = std::sqrt(r.energy);
  const double cell = f.grid().cell_area();
  r.area = f.grid().mask_area();
  r.functional = 0.0;
  for (double v : f.values()) r.functional += std::exp(2.0 * std::numbers::pi * v * v) * cell;

  const auto star = rearrange::radial_rearrangement(f);
  r.rearranged_functional = 0.0;
  for (double v : star.field.values()) {
    const double scaled = v / std::sqrt(2.0);
    r.rearranged_functional += std::exp(4.0 * std::numbers::pi * scaled * scaled) * cell;
  }
  r.rearranged_energy = 0.5 * energy(star.field);
  r.identity_deviation = std::abs(r.functional - r.rearranged_functional) / r.functional;
  return r;
}

void validate(const CounterexampleParams& params) {
  if (!(params.a > 1.0) || !std::isfinite(params.a)) throw DomainError("curvature parameter must exceed 1");
  if (!(params.tau0 > 0.0 && params.tau0 <= 0.01)) throw DomainError("tau0 must lie in (0, 1/100]");
  const double log_inv = params.resolved_log_inv_lambda();
  if (!(log_inv > params.a * params.a)) {
    throw DomainError("concentration scale must satisfy lambda < exp(-a^2)");
  }
}

LabeledDomain counterexample_domain(const CounterexampleParams& params, int segments) {
  if (!(params.a > 1.0)) throw DomainError("curvature parameter must exceed 1");
  if (segments < 2) throw ValidationError("need at least 2 segments");
  const double a = params.a;
  const double c = std::cbrt(1.0 / a);
  const auto xs = [&](int k) { return -c + 2.0 * c * k / segments; };
  // Cap y = a x^2 + m (c^2 - x^2); the enclosed area is linear in m.
  const auto build = [&](double m) {
    geometry::Ring ring;
    for (int k = 0; k <= segments; ++k) {
      const double x = xs(k);
      ring.vertices.push_back({x, a * x * x});
      ring.labels.push_back(k == segments ? geometry::EdgeLabel::kFixed : geometry::EdgeLabel::kFree);
    }
    for (int k = segments - 1; k >= 1; --k) {
      const double x = xs(k);
      ring.vertices.push_back({x, a * x * x + m * (c * c - x * x)});
      ring.labels.push_back(geometry::EdgeLabel::kFixed);
    }
    return ring;
  };
  const double unit_area = geometry::signed_area(build(1.0).vertices);
  return LabeledDomain(build(1.0 / unit_area));
}

std::vector<BlowupRow> counterexample_blowup(const std::vector<CounterexampleParams>& params_list) {
  std::vector<BlowupRow> rows;
  rows.reserve(params_list.size());
  for (const auto& params : params_list) {
    validate(params);
    BlowupRow row;
    row.a = params.a;
    row.tau0 = params.tau0;
    row.log_inv_lambda = params.resolved_log_inv_lambda();
    const double log_ratio = std::log(params.a) - std::log(params.tau0);
    row.energy_deficit = params.tau0 * log_ratio / (std::numbers::pi * row.log_inv_lambda);
    row.energy_bound = 1.0 - row.energy_deficit;
    row.functional_lower_bound = std::numbers::pi * std::exp(2.0 * params.tau0 * log_ratio / std::numbers::pi);
    rows.push_back(row);
  }
  return rows;
}

BlowupCheck check_blowup(const std::vector<BlowupRow>& rows) {
  BlowupCheck check;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!(rows[k].energy_deficit > 0.0 && rows[k].energy_deficit < 1.0)) check.energy_in_range = false;
    if (k > 0 && rows[k].a > rows[k - 1].a &&
        !(rows[k].functional_lower_bound > rows[k - 1].functional_lower_bound)) {
      check.increasing = false;
    }
  }
  return check;
}

}  // namespace freebound::quotients
