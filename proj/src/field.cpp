#include "freebound/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freebound/errors.hpp"

namespace freebound::field {

ScalarField::ScalarField(std::shared_ptr<const RasterGrid> grid, std::vector<double> values,
                         std::vector<double> fixed_trace)
    : grid_(std::move(grid)), values_(std::move(values)), trace_(std::move(fixed_trace)) {
  if (!grid_) throw ValidationError("field needs a grid");
  if (values_.size() != grid_->size()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " values for " +
                          std::to_string(grid_->size()) + " cells");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("field values must be finite and nonnegative");
  }
  if (!trace_.empty() && trace_.size() != grid_->boundary_faces.size()) {
    throw ValidationError("trace size does not match the boundary faces");
  }
  face_slot_.assign(grid_->size(), {-1, -1, -1, -1});
  for (std::size_t f = 0; f < grid_->boundary_faces.size(); ++f) {
    const auto& face = grid_->boundary_faces[f];
    face_slot_[static_cast<std::size_t>(face.cell)][face.direction] = static_cast<int>(f);
  }
}

double ScalarField::ghost(std::size_t k, int direction) const {
  const int n = grid_->neighbor(k, direction);
  if (n >= 0) return values_[static_cast<std::size_t>(n)];
  const auto kind = grid_->faces[k][direction];
  if (kind == raster::FaceKind::kFree) return values_[k];
  const double trace = trace_.empty() ? 0.0 : trace_[static_cast<std::size_t>(face_slot_[k][direction])];
  return 2.0 * trace - values_[k];
}

Point ScalarField::gradient(std::size_t k) const {
  const double inv = 0.5 / grid_->h;
  return {(ghost(k, raster::kEast) - ghost(k, raster::kWest)) * inv,
          (ghost(k, raster::kNorth) - ghost(k, raster::kSouth)) * inv};
}

double ScalarField::max_fixed_trace() const {
  double best = 0.0;
  for (std::size_t f = 0; f < trace_.size(); ++f) {
    if (grid_->boundary_faces[f].kind == raster::FaceKind::kFixed) best = std::max(best, std::abs(trace_[f]));
  }
  return best;
}

double ScalarField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

ScalarField ScalarField::scaled(double c) const {
  std::vector<double> v = values_;
  std::vector<double> t = trace_;
  for (auto& x : v) x *= c;
  for (auto& x : t) x *= c;
  return ScalarField(grid_, std::move(v), std::move(t));
}

ScalarField sample(std::shared_ptr<const RasterGrid> grid, const std::function<double(Point)>& fn,
                   TraceMode mode) {
  std::vector<double> values(grid->size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = fn(grid->center(k));
  std::vector<double> trace;
  if (mode == TraceMode::kSample) {
    trace.resize(grid->boundary_faces.size());
    for (std::size_t f = 0; f < trace.size(); ++f) trace[f] = fn(grid->boundary_faces[f].midpoint);
  }
  return ScalarField(std::move(grid), std::move(values), std::move(trace));
}

double fixed_cutoff(const geometry::LabeledDomain& domain, Point x, double width) {
  const double d = domain.distance_to_boundary(x, geometry::EdgeLabel::kFixed);
  if (!std::isfinite(d)) return 1.0;
  const double t = std::clamp(d / width, 0.0, 1.0);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double inradius_estimate(const RasterGrid& grid) {
  double best = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    best = std::max(best, grid.domain->distance_to_boundary(grid.center(k)));
  }
  return best;
}

ScalarField random_bump_field(std::shared_ptr<const RasterGrid> grid, std::mt19937_64& rng) {
  const auto& domain = *grid->domain;
  const double inradius = inradius_estimate(*grid);
  const int count = std::uniform_int_distribution<int>(1, 4)(rng);
  std::uniform_int_distribution<std::size_t> pick(0, grid->size() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Bump {
    Point center;
    double width;
    double height;
  };
  std::vector<Bump> bumps;
  for (int b = 0; b < count; ++b) {
    bumps.push_back({grid->center(pick(rng)), inradius * (0.25 + 0.5 * unit(rng)), 0.5 + unit(rng)});
  }
  const double width = 0.2 * inradius;
  return sample(grid, [&](Point x) {
    double v = 0.0;
    for (const auto& b : bumps) {
      const Point d = x - b.center;
      v += b.height * std::exp(-geometry::dot(d, d) / (b.width * b.width));
    }
    return v * fixed_cutoff(domain, x, width);
  });
}

}  // namespace freebound::field
