#pragma once

// Nonnegative grid functions on a rasterized domain with ghost values across
// boundary faces: odd reflection about the trace on fixed faces, even
// reflection on free faces.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "freebound/raster.hpp"

namespace freebound::field {

using geometry::Point;
using raster::RasterGrid;

enum class TraceMode : std::uint8_t {
  kZero,    // the field vanishes on fixed faces
  kSample,  // the trace is the sampled function at fixed face midpoints
};

class ScalarField {
 public:
  // values has one entry per active cell; fixed_trace is empty (zero trace)
  // or one entry per boundary face. Throws ValidationError on size mismatch
  // or negative / non-finite values.
  ScalarField(std::shared_ptr<const RasterGrid> grid, std::vector<double> values,
              std::vector<double> fixed_trace = {});

  const RasterGrid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const RasterGrid>& grid_ptr() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }

  // Value on the other side of face `direction` of active cell k.
  double ghost(std::size_t k, int direction) const;
  // Central-difference gradient at active cell k.
  Point gradient(std::size_t k) const;
  // Largest trace magnitude on fixed faces (0 in kZero mode).
  double max_fixed_trace() const;
  double max_value() const;
  double min_value() const;

  ScalarField scaled(double c) const;

 private:
  std::shared_ptr<const RasterGrid> grid_;
  std::vector<double> values_;
  std::vector<double> trace_;
  // Per active cell and direction, index into boundary_faces or -1.
  std::vector<std::array<int, 4>> face_slot_;
};

ScalarField sample(std::shared_ptr<const RasterGrid> grid, const std::function<double(Point)>& fn,
                   TraceMode mode = TraceMode::kZero);

// Quintic smoothstep of distance to the fixed boundary over `width`; 1 when
// there is no fixed boundary.
double fixed_cutoff(const geometry::LabeledDomain& domain, Point x, double width);

// Largest distance from an active cell center to the boundary.
double inradius_estimate(const RasterGrid& grid);

// Sum of 1-4 Gaussian bumps with random centers inside the domain, multiplied
// by the fixed-boundary cutoff of width 0.2 * inradius.
ScalarField random_bump_field(std::shared_ptr<const RasterGrid> grid, std::mt19937_64& rng);

}  // namespace freebound::field
