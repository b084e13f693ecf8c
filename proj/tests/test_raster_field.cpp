#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "freebound/contour.hpp"
#include "freebound/domains.hpp"
#include "freebound/errors.hpp"
#include "freebound/field.hpp"
#include "freebound/raster.hpp"

using namespace freebound;
using geometry::Point;
using raster::FaceKind;
using std::numbers::pi;

namespace {

double cone(Point x) { return std::max(0.0, 1.0 - geometry::norm(x)); }
double paraboloid(Point x) { return std::max(0.0, 1.0 - geometry::dot(x, x)); }

}  // namespace

TEST_CASE("unit square rasterizes exactly") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 64);
  CHECK(g->nx == 64);
  CHECK(g->ny == 64);
  CHECK(g->size() == 64u * 64u);
  CHECK(g->mask_area() == doctest::Approx(1.0));
  CHECK(raster::coverage_error(*g) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rasterize rejects bad spacings") {
  const auto sq = domains::unit_square(false);
  CHECK_THROWS_AS(raster::rasterize(sq, 0.0), ValidationError);
  CHECK_THROWS_AS(raster::rasterize(sq, -0.1), ValidationError);
  CHECK_THROWS_AS(raster::rasterize(sq, 0.5), ValidationError);
}

TEST_CASE("boundary faces carry the nearest edge label") {
  const auto g = raster::rasterize(domains::unit_square(true), 1.0 / 32);
  int free = 0, fixed = 0;
  for (const auto& f : g->boundary_faces) {
    if (f.kind == FaceKind::kFree) {
      ++free;
      CHECK(f.direction == raster::kSouth);
      CHECK(f.midpoint.y == doctest::Approx(0.0));
    } else {
      ++fixed;
    }
  }
  CHECK(free == 32);
  CHECK(fixed == 96);
  for (std::size_t k = 0; k < g->size(); ++k) {
    for (int d = 0; d < 4; ++d) {
      CHECK((g->neighbor(k, d) >= 0) == (g->faces[k][d] == FaceKind::kInterior));
    }
  }
}

TEST_CASE("half-disk mask area and first-order refinement") {
  const auto hd = domains::half_disk(1.0, 256);
  const double exact = geometry::area(hd);
  const double perimeter = geometry::boundary_length(hd, geometry::EdgeLabel::kFixed) +
                           geometry::boundary_length(hd, geometry::EdgeLabel::kFree);
  const double h = 1.0 / 128;
  const auto g = raster::rasterize(hd, h);
  CHECK(std::abs(g->mask_area() - pi / 2) <= 2.0 * h * perimeter);

  double previous = 0.0;
  for (double hh : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const auto gg = raster::rasterize(hd, hh);
    const double err = raster::coverage_error(*gg);
    CHECK(err >= std::abs(gg->mask_area() - exact) - 1e-12);
    if (previous > 0.0) {
      const double rate = previous / err;
      CHECK(rate > 1.6);
      CHECK(rate < 2.5);
    }
    previous = err;
  }
}

TEST_CASE("field validation") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 16);
  CHECK_THROWS_AS(field::ScalarField(g, std::vector<double>(3, 1.0)), ValidationError);
  std::vector<double> v(g->size(), 1.0);
  v[5] = -0.1;
  CHECK_THROWS_AS(field::ScalarField(g, v), ValidationError);
  v[5] = std::nan("");
  CHECK_THROWS_AS(field::ScalarField(g, v), ValidationError);
}

TEST_CASE("ghost values reflect oddly across fixed faces and evenly across free faces") {
  const auto g = raster::rasterize(domains::unit_square(true), 1.0 / 16);
  const auto f = field::sample(g, [](Point x) { return 1.0 + x.x; });
  for (const auto& face : g->boundary_faces) {
    const double u = f[static_cast<std::size_t>(face.cell)];
    const double ghost = f.ghost(static_cast<std::size_t>(face.cell), face.direction);
    if (face.kind == FaceKind::kFree) {
      CHECK(ghost == u);
    } else {
      CHECK(ghost == -u);
    }
  }
}

TEST_CASE("sampled trace") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 16);
  const auto f = field::sample(g, [](Point) { return 2.0; }, field::TraceMode::kSample);
  CHECK(f.max_fixed_trace() == doctest::Approx(2.0));
  // Constant trace equal to the field value: ghosts equal the value.
  for (const auto& face : g->boundary_faces) {
    CHECK(f.ghost(static_cast<std::size_t>(face.cell), face.direction) == doctest::Approx(2.0));
  }
  const auto z = field::sample(g, [](Point) { return 2.0; });
  CHECK(z.max_fixed_trace() == 0.0);
}

TEST_CASE("central-difference gradient of a linear field") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 32);
  const auto f = field::sample(g, [](Point x) { return 1.0 + 2.0 * x.x + 3.0 * x.y; });
  for (std::size_t k = 0; k < g->size(); ++k) {
    bool interior = true;
    for (int d = 0; d < 4; ++d) interior = interior && g->faces[k][d] == FaceKind::kInterior;
    if (!interior) continue;
    const auto grad = f.gradient(k);
    CHECK(grad.x == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(grad.y == doctest::Approx(3.0).epsilon(1e-10));
  }
}

TEST_CASE("field extrema and scaling") {
  const auto g = raster::rasterize(domains::disk(), 1.0 / 32);
  const auto f = field::sample(g, cone);
  const auto s = f.scaled(3.0);
  CHECK(s.max_value() == doctest::Approx(3.0 * f.max_value()));
  CHECK(s.min_value() == doctest::Approx(3.0 * f.min_value()));
  CHECK_THROWS_AS(f.scaled(-1.0), ValidationError);
}

TEST_CASE("fixed cutoff and inradius") {
  const auto hd = domains::half_disk();
  CHECK(field::fixed_cutoff(hd, {0.0, 1.0}, 0.1) < 1e-12);
  CHECK(field::fixed_cutoff(hd, {0.0, 0.2}, 0.1) == 1.0);
  const double mid = field::fixed_cutoff(hd, {0.0, 0.95}, 0.1);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(field::fixed_cutoff(domains::square_annulus(), {0.9, 0.9}, 0.1) < 1.0);

  const auto g = raster::rasterize(domains::disk(1.0, 128), 1.0 / 64);
  CHECK(field::inradius_estimate(*g) == doctest::Approx(1.0).epsilon(2.0 / 64));
}

TEST_CASE("random bump fields are admissible") {
  std::mt19937_64 rng(3);
  for (const auto& d : domains::random_concave_suite(9, 6)) {
    const auto g = raster::rasterize(d, d.diameter() / 64);
    const auto f = field::random_bump_field(g, rng);
    CHECK(f.max_fixed_trace() == 0.0);
    CHECK(f.min_value() >= 0.0);
    CHECK(f.max_value() > 0.0);
  }
}

TEST_CASE("cone level sets on the unit disk") {
  const auto g = raster::rasterize(domains::disk(1.0, 256), 1.0 / 128);
  const auto f = field::sample(g, cone);
  for (double t : {0.2, 0.5, 0.8}) {
    const auto s = contour::level_stats(f, t, 2.0);
    const double exact = 2 * pi * (1 - t);
    CHECK(s.components == 1);
    CHECK(s.reliable);
    CHECK(s.surface == doctest::Approx(exact).epsilon(0.03));
    CHECK(s.coarea_integral == doctest::Approx(exact).epsilon(0.03));
    CHECK(s.flux_p == doctest::Approx(exact).epsilon(0.03));
  }
}

TEST_CASE("paraboloid level sets on the unit disk") {
  const auto g = raster::rasterize(domains::disk(1.0, 256), 1.0 / 128);
  const auto f = field::sample(g, paraboloid);
  for (double t : {0.25, 0.6}) {
    const auto s = contour::level_stats(f, t, 2.0);
    const double r = std::sqrt(1 - t);
    CHECK(s.surface == doctest::Approx(2 * pi * r).epsilon(0.03));
    // |grad u| = 2r on the contour.
    CHECK(s.coarea_integral == doctest::Approx(pi).epsilon(0.03));
    CHECK(s.flux_p == doctest::Approx(2 * pi * r * 2 * r).epsilon(0.03));
  }
}

TEST_CASE("disjoint bumps give two components") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 128);
  const auto f = field::sample(g, [](Point x) {
    const double a = 0.2 - geometry::distance(x, {0.25, 0.5});
    const double b = 0.2 - geometry::distance(x, {0.75, 0.5});
    return std::max({0.0, a, b});
  });
  const auto s = contour::level_stats(f, 0.05, 2.0);
  CHECK(s.components == 2);
  CHECK(s.surface == doctest::Approx(2 * 2 * pi * 0.15).epsilon(0.03));
}

TEST_CASE("levels outside the range are empty") {
  const auto g = raster::rasterize(domains::disk(), 1.0 / 32);
  const auto f = field::sample(g, cone);
  const auto s = contour::level_stats(f, 2.0, 2.0);
  CHECK(s.surface == 0.0);
  CHECK(s.components == 0);
}
