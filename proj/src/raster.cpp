#include "freebound/raster.hpp"

#include <algorithm>
#include <cmath>

#include "freebound/errors.hpp"

namespace freebound::raster {

namespace {

// Signed area of a ring clipped to an axis-aligned box (Sutherland-Hodgman;
// exact for convex clip windows even when the ring is not convex).
double clipped_ring_area(const std::vector<Point>& ring, Point lo, Point hi) {
  std::vector<Point> poly = ring;
  std::vector<Point> next;
  const auto clip = [&](auto inside, auto intersect) {
    next.clear();
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Point cur = poly[k];
      const Point prev = poly[(k + n - 1) % n];
      const bool in_c = inside(cur), in_p = inside(prev);
      if (in_c) {
        if (!in_p) next.push_back(intersect(prev, cur));
        next.push_back(cur);
      } else if (in_p) {
        next.push_back(intersect(prev, cur));
      }
    }
    poly.swap(next);
  };
  const auto at_x = [](double x) {
    return [x](Point a, Point b) { return Point{x, a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x)}; };
  };
  const auto at_y = [](double y) {
    return [y](Point a, Point b) { return Point{a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y), y}; };
  };
  clip([&](Point p) { return p.x >= lo.x; }, at_x(lo.x));
  if (poly.empty()) return 0.0;
  clip([&](Point p) { return p.x <= hi.x; }, at_x(hi.x));
  if (poly.empty()) return 0.0;
  clip([&](Point p) { return p.y >= lo.y; }, at_y(lo.y));
  if (poly.empty()) return 0.0;
  clip([&](Point p) { return p.y <= hi.y; }, at_y(hi.y));
  if (poly.size() < 3) return 0.0;
  return geometry::signed_area(poly);
}

}  // namespace

std::shared_ptr<const RasterGrid> rasterize(const LabeledDomain& domain, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("grid spacing must be positive");
  const auto box = domain.bounds();
  if (std::max(box.width(), box.height()) / h < 8.0) {
    throw ValidationError("grid spacing too coarse: fewer than 8 cells across the domain");
  }
  auto grid = std::make_shared<RasterGrid>();
  grid->h = h;
  grid->nx = std::max(1, static_cast<int>(std::ceil(box.width() / h - 1e-9)));
  grid->ny = std::max(1, static_cast<int>(std::ceil(box.height() / h - 1e-9)));
  grid->origin = {box.min.x + 0.5 * (box.width() - grid->nx * h),
                  box.min.y + 0.5 * (box.height() - grid->ny * h)};
  const std::size_t total = static_cast<std::size_t>(grid->nx) * grid->ny;
  grid->mask.assign(total, 0);
  grid->index.assign(total, -1);

  // Scanline fill through the cell centers, even-odd over every ring.
  std::vector<double> crossings;
  for (int j = 0; j < grid->ny; ++j) {
    const double y = grid->origin.y + (j + 0.5) * h;
    crossings.clear();
    for (const auto& e : domain.edges()) {
      if ((e.a.y > y) != (e.b.y > y)) {
        crossings.push_back(e.a.x + (y - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      const int i0 = static_cast<int>(std::ceil((crossings[k] - grid->origin.x) / h - 0.5));
      const int i1 = static_cast<int>(std::ceil((crossings[k + 1] - grid->origin.x) / h - 0.5)) - 1;
      for (int i = std::max(i0, 0); i <= std::min(i1, grid->nx - 1); ++i) {
        grid->mask[static_cast<std::size_t>(j) * grid->nx + i] = 1;
      }
    }
  }
  for (int j = 0; j < grid->ny; ++j) {
    for (int i = 0; i < grid->nx; ++i) {
      const std::size_t g = static_cast<std::size_t>(j) * grid->nx + i;
      if (!grid->mask[g]) continue;
      grid->index[g] = static_cast<int>(grid->cells.size());
      grid->cells.push_back({i, j});
    }
  }
  if (grid->cells.empty()) throw ValidationError("no grid cell lies inside the domain");

  grid->faces.resize(grid->cells.size());
  for (std::size_t c = 0; c < grid->cells.size(); ++c) {
    const auto [i, j] = grid->cells[c];
    for (int d = 0; d < 4; ++d) {
      if (grid->active(i + kDx[d], j + kDy[d]) >= 0) {
        grid->faces[c][d] = FaceKind::kInterior;
        continue;
      }
      const Point mid = grid->center(i, j) + (0.5 * h) * Point{double(kDx[d]), double(kDy[d])};
      const auto label = domain.nearest_label(mid);
      const FaceKind kind = label == geometry::EdgeLabel::kFree ? FaceKind::kFree : FaceKind::kFixed;
      grid->faces[c][d] = kind;
      grid->boundary_faces.push_back({static_cast<int>(c), static_cast<Direction>(d), kind, mid});
    }
  }
  grid->domain = std::make_shared<const LabeledDomain>(domain);
  return grid;
}

double coverage_error(const RasterGrid& grid) {
  const auto& domain = *grid.domain;
  // Cells touched by some boundary edge; every other cell is entirely inside
  // or outside and agrees with its center.
  std::vector<std::uint8_t> straddle(grid.mask.size(), 0);
  const double h = grid.h;
  for (const auto& e : domain.edges()) {
    const auto cell_range = [&](double a, double b, double origin, int count) {
      const int lo = static_cast<int>(std::floor((std::min(a, b) - origin) / h)) - 1;
      const int hi = static_cast<int>(std::floor((std::max(a, b) - origin) / h)) + 1;
      return std::pair{std::max(lo, 0), std::min(hi, count - 1)};
    };
    const auto [i0, i1] = cell_range(e.a.x, e.b.x, grid.origin.x, grid.nx);
    const auto [j0, j1] = cell_range(e.a.y, e.b.y, grid.origin.y, grid.ny);
    for (int j = j0; j <= j1; ++j) {
      for (int i = i0; i <= i1; ++i) {
        const Point c = grid.center(i, j);
        // Conservative: the edge comes within the cell's circumradius.
        if (geometry::distance_to_segment(c, e.a, e.b) <= 0.7072 * h) {
          straddle[static_cast<std::size_t>(j) * grid.nx + i] = 1;
        }
      }
    }
  }
  double error = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t g = static_cast<std::size_t>(j) * grid.nx + i;
      if (!straddle[g]) continue;
      const Point lo{grid.origin.x + i * h, grid.origin.y + j * h};
      const Point hi{lo.x + h, lo.y + h};
      double covered = clipped_ring_area(domain.outer().vertices, lo, hi);
      for (const auto& hole : domain.holes()) covered += clipped_ring_area(hole.vertices, lo, hi);
      const double indicator = grid.mask[g] ? h * h : 0.0;
      error += std::abs(indicator - covered);
    }
  }
  return error;
}

}  // namespace freebound::raster
