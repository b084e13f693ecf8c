#include "freebound/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "freebound/domains.hpp"
#include "freebound/errors.hpp"

namespace freebound::rearrange {

namespace {

// Cell values in ascending order with the measure of super-level sets.
class LevelMeasure {
 public:
  explicit LevelMeasure(const ScalarField& f) : ascending_(f.values()), cell_(f.grid().cell_area()) {
    std::sort(ascending_.begin(), ascending_.end());
  }

  double lo() const { return ascending_.front(); }
  double hi() const { return ascending_.back(); }

  double operator()(double t) const {
    const auto above = ascending_.end() - std::upper_bound(ascending_.begin(), ascending_.end(), t);
    return static_cast<double>(above) * cell_;
  }

  // Least-squares slope of mu over [t - dt, t + dt].
  double slope(double t, double dt) const {
    constexpr int kSamples = 41;
    double sxy = 0.0, sxx = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      const double x = dt * (2.0 * k / (kSamples - 1) - 1.0);
      sxy += x * (*this)(t + x);
      sxx += x * x;
    }
    return sxy / sxx;
  }

  // Window half-width: a fraction of the range, at most half the distance
  // to either end.
  double half_width(double t, double fraction) const {
    return std::min({fraction * (hi() - lo()), 0.5 * (t - lo()), 0.5 * (hi() - t)});
  }

 private:
  std::vector<double> ascending_;
  double cell_;
};

constexpr double kSlopeWindow = 0.05;

}  // namespace

double distribution_function(const ScalarField& f, double t) {
  const auto& v = f.values();
  const auto count = std::count_if(v.begin(), v.end(), [t](double x) { return x > t; });
  return static_cast<double>(count) * f.grid().cell_area();
}

DecreasingProfile::DecreasingProfile(const ScalarField& f)
    : levels_(f.values()), cell_(f.grid().cell_area()), measure_(f.grid().mask_area()) {
  std::sort(levels_.begin(), levels_.end(), std::greater<>());
}

double DecreasingProfile::operator()(double s) const {
  const double x = s / cell_ - 0.5;
  if (x <= 0.0) return levels_.front();
  const double last = static_cast<double>(levels_.size() - 1);
  if (x >= last) return levels_.back();
  const auto k = static_cast<std::size_t>(x);
  const double frac = x - static_cast<double>(k);
  return levels_[k] + frac * (levels_[k + 1] - levels_[k]);
}

DecreasingProfile decreasing_rearrangement(const ScalarField& f) { return DecreasingProfile(f); }

double RadialField::operator()(geometry::Point x) const {
  return profile(std::numbers::pi * geometry::dot(x, x));
}

RadialField radial_rearrangement(const ScalarField& f) {
  DecreasingProfile profile(f);
  const double area = profile.measure();
  const double radius = std::sqrt(area / std::numbers::pi);
  // Inscribed polygon scaled so its area matches the circle of radius `radius`.
  constexpr int kSegments = 1024;
  const double polygon_radius =
      std::sqrt(2.0 * area / (kSegments * std::sin(2.0 * std::numbers::pi / kSegments)));
  const auto grid = raster::rasterize(domains::disk(polygon_radius, kSegments), f.grid().h);
  auto values = [&](geometry::Point x) { return profile(std::numbers::pi * geometry::dot(x, x)); };
  ScalarField star = field::sample(grid, values, field::TraceMode::kSample);
  return RadialField{radius, std::move(profile), std::move(star)};
}

LevelStats level_stats(const ScalarField& f, double t, double p) { return contour::level_stats(f, t, p); }

double gradient_lp_norm(const ScalarField& f, double p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    sum += std::pow(geometry::norm(f.gradient(k)), p);
  }
  return std::pow(sum * f.grid().cell_area(), 1.0 / p);
}

std::vector<double> quantile_levels(const ScalarField& f, int count) {
  std::vector<double> sorted = f.values();
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  std::vector<double> levels;
  if (!(hi > lo) || count <= 0) return levels;
  for (int q = 1; q <= count; ++q) {
    const double pos = static_cast<double>(q) / (count + 1) * static_cast<double>(sorted.size() - 1);
    const auto k = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(k);
    const double t = k + 1 < sorted.size() ? sorted[k] + frac * (sorted[k + 1] - sorted[k]) : sorted[k];
    if (t > lo && t < hi) levels.push_back(t);
  }
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

std::vector<double> uniform_levels(const ScalarField& f, int count, double margin) {
  const double lo = f.min_value(), hi = f.max_value();
  std::vector<double> levels;
  if (!(hi > lo) || count <= 0) return levels;
  const double span = (1.0 - 2.0 * margin) * (hi - lo);
  for (int k = 0; k < count; ++k) levels.push_back(lo + margin * (hi - lo) + span * (k + 0.5) / count);
  return levels;
}

CoareaSlopeReport check_coarea_slope(const ScalarField& f, const std::vector<double>& levels, double window) {
  const LevelMeasure mu(f);
  CoareaSlopeReport report;
  for (double t : levels) {
    const double dt = mu.half_width(t, window);
    const LevelStats stats = contour::level_stats(f, t, 2.0);
    if (!(dt > 0.0) || !stats.reliable || !(stats.coarea_integral > 0.0)) {
      ++report.skipped;
      continue;
    }
    // |mu'(t)| = 1/|f#'(mu(t))|
    const double slope = mu.slope(t, dt);
    if (!(slope < 0.0)) {
      ++report.skipped;
      continue;
    }
    CoareaSlopeRow row{t, mu(t), -slope, stats.coarea_integral, 0.0};
    row.relative_deviation = std::abs(row.inverse_slope - row.coarea_integral) / row.coarea_integral;
    report.max_relative_deviation = std::max(report.max_relative_deviation, row.relative_deviation);
    report.rows.push_back(row);
  }
  return report;
}

InequalitySides check_level_holder(const ScalarField& f, double t, double p) {
  const LevelStats stats = contour::level_stats(f, t, p);
  if (!(stats.surface > 0.0) || !(stats.coarea_integral > 0.0)) {
    throw ValidationError("level " + std::to_string(t) + " has an empty contour");
  }
  return {std::pow(stats.coarea_integral, 1.0 - p), std::pow(stats.surface, -p) * stats.flux_p};
}

InequalitySides check_profile_energy(const ScalarField& f, double p, int bins) {
  const DecreasingProfile profile(f);
  const LevelMeasure mu(f);
  const double dz = profile.measure() / bins;
  double lhs = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double t = profile((b + 0.5) * dz);
    if (!(t > mu.lo() && t < mu.hi())) continue;
    const double dt = mu.half_width(t, kSlopeWindow);
    const double slope = dt > 0.0 ? mu.slope(t, dt) : 0.0;
    if (!(slope < 0.0)) continue;
    const LevelStats stats = contour::level_stats(f, t, p);
    if (!stats.reliable) continue;
    // |df#/dz| = 1 / |mu'(t)| at z = mu(t)
    lhs += std::pow(stats.surface / -slope, p) * dz;
  }
  return {lhs, std::pow(gradient_lp_norm(f, p), p)};
}

InequalitySides check_rearrangement_energy(const ScalarField& f, double p) {
  if (!(p > 1.0)) throw PreconditionError("gradient exponent must exceed 1");
  const auto concavity = geometry::is_concave_free_boundary(*f.grid().domain);
  if (!concavity.concave) throw PreconditionError("free boundary is not concave");
  if (f.max_fixed_trace() > 1e-10 * f.max_value()) {
    throw PreconditionError("field does not vanish on the fixed boundary");
  }
  const RadialField star = radial_rearrangement(f);
  return {std::pow(gradient_lp_norm(star.field, p), p),
          std::pow(2.0, p / 2.0) * std::pow(gradient_lp_norm(f, p), p)};
}

}  // namespace freebound::rearrange
