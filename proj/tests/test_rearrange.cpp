#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "freebound/domains.hpp"
#include "freebound/errors.hpp"
#include "freebound/quotients.hpp"
#include "freebound/rearrange.hpp"

using namespace freebound;
using namespace freebound::rearrange;
using geometry::Point;
using std::numbers::pi;

namespace {

double cone(Point x) { return std::max(0.0, 1.0 - geometry::norm(x)); }
double paraboloid(Point x) { return std::max(0.0, 1.0 - geometry::dot(x, x)); }

std::shared_ptr<const raster::RasterGrid> disk_grid(double h) {
  return raster::rasterize(domains::disk(1.0, 256), h);
}

}  // namespace

TEST_CASE("distribution function of a constant field") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 32);
  const auto f = field::sample(g, [](Point) { return 0.7; });
  CHECK(distribution_function(f, 0.0) == doctest::Approx(1.0));
  CHECK(distribution_function(f, 0.69) == doctest::Approx(1.0));
  CHECK(distribution_function(f, 0.7) == 0.0);
  CHECK(distribution_function(f, 5.0) == 0.0);
}

TEST_CASE("distribution function of the cone and of a linear field") {
  const double h = 1.0 / 128;
  const auto f = field::sample(disk_grid(h), cone);
  for (double t : {0.1, 0.3, 0.5, 0.9}) {
    CHECK(std::abs(distribution_function(f, t) - pi * (1 - t) * (1 - t)) <= 3 * h);
  }
  const auto g = raster::rasterize(domains::unit_square(false), h);
  const auto lin = field::sample(g, [](Point x) { return x.x; });
  for (double t : {0.05, 0.4, 0.77}) {
    CHECK(std::abs(distribution_function(lin, t) - (1 - t)) <= 2 * h);
  }
}

TEST_CASE("decreasing rearrangement") {
  SUBCASE("constant") {
    const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 32);
    const auto p = decreasing_rearrangement(field::sample(g, [](Point) { return 0.4; }));
    for (double s : {0.0, 0.3, 1.0}) CHECK(p(s) == 0.4);
  }
  SUBCASE("cone") {
    const double h = 1.0 / 128;
    const auto f = field::sample(disk_grid(h), cone);
    const auto p = decreasing_rearrangement(f);
    CHECK(p.measure() == doctest::Approx(f.grid().mask_area()));
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double s = p.measure() * k / 200;
      worst = std::max(worst, std::abs(p(s) - (1 - std::sqrt(s / pi))));
    }
    CHECK(worst <= 3 * h);
    CHECK(p(0.0) == f.max_value());
    CHECK(p(p.measure()) == f.min_value());
    for (std::size_t k = 1; k < p.levels().size(); ++k) CHECK(p.levels()[k] <= p.levels()[k - 1]);
  }
  SUBCASE("two-valued step") {
    const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 32);
    const auto f = field::sample(g, [](Point x) { return x.x < 0.5 ? 1.0 : 0.0; });
    const auto p = decreasing_rearrangement(f);
    CHECK(p(0.25) == 1.0);
    CHECK(p(0.5 - 1.0 / 1024) == 1.0);
    CHECK(p(0.5 + 1.0 / 1024) == 0.0);
    CHECK(p(0.75) == 0.0);
  }
}

TEST_CASE("radial rearrangement of a radial field is itself") {
  const double h = 1.0 / 128;
  const auto f = field::sample(disk_grid(h), paraboloid);
  const auto star = radial_rearrangement(f);
  CHECK(star.radius == doctest::Approx(std::sqrt(f.grid().mask_area() / pi)));
  for (Point x : {Point{0.1, 0.2}, Point{-0.5, 0.3}, Point{0.0, -0.8}}) {
    CHECK(std::abs(star(x) - paraboloid(x)) <= 2 * h);
  }
}

TEST_CASE("radial rearrangement of the half-disk cone") {
  const double h = 1.0 / 128;
  const auto g = raster::rasterize(domains::half_disk(1.0, 256), h);
  const auto f = field::sample(g, cone);
  const auto star = radial_rearrangement(f);
  CHECK(star.radius == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));
  for (double r : {0.0, 0.2, 0.5}) {
    CHECK(std::abs(star(Point{r, 0.0}) - (1 - std::sqrt(2.0) * r)) <= 3 * h);
  }
  double sum_u = 0.0, sum_star = 0.0;
  for (double v : f.values()) sum_u += v;
  for (double v : star.field.values()) sum_star += v;
  const double cell = h * h;
  CHECK(sum_star * cell == doctest::Approx(sum_u * cell).epsilon(0.01));
  // Layer-cake preserves every L^q norm, in particular L^{p*} for p = 1.5.
  CHECK(quotients::lp_norm(star.field, 6.0) == doctest::Approx(quotients::lp_norm(f, 6.0)).epsilon(0.01));
}

TEST_CASE("equimeasurability of the radial rearrangement") {
  std::mt19937_64 rng(17);
  for (const auto& d : domains::random_concave_suite(5, 6)) {
    const auto g = raster::rasterize(d, d.diameter() / 128);
    const auto f = field::random_bump_field(g, rng);
    const auto star = radial_rearrangement(f);
    for (double t : quantile_levels(f, 16)) {
      const double gap = std::abs(distribution_function(f, t) - distribution_function(star.field, t));
      const double allowed = 4.0 * g->h * level_stats(f, t, 2.0).surface;
      CHECK(gap <= allowed);
    }
  }
}

TEST_CASE("level helpers") {
  const auto f = field::sample(disk_grid(1.0 / 64), cone);
  const auto q = quantile_levels(f, 10);
  CHECK(q.size() == 10);
  for (std::size_t k = 0; k < q.size(); ++k) {
    CHECK(q[k] > f.min_value());
    CHECK(q[k] < f.max_value());
    if (k) CHECK(q[k] > q[k - 1]);
  }
  const auto u = uniform_levels(f, 4, 0.1);
  REQUIRE(u.size() == 4);
  const double span = f.max_value() - f.min_value();
  CHECK(u[0] == doctest::Approx(f.min_value() + span * (0.1 + 0.8 / 8)));
}

TEST_CASE("coarea slope residual on cone and paraboloid") {
  for (auto fn : {cone, paraboloid}) {
    double previous = 1.0;
    for (double h : {1.0 / 128, 1.0 / 256}) {
      const auto f = field::sample(disk_grid(h), fn);
      const auto r = check_coarea_slope(f, uniform_levels(f, 32));
      CHECK(r.rows.size() == 32);
      CHECK(r.max_relative_deviation <= 0.05);
      CHECK(r.max_relative_deviation < previous);
      previous = r.max_relative_deviation;
    }
  }
}

TEST_CASE("cone coarea slope matches the closed form") {
  const auto f = field::sample(disk_grid(1.0 / 128), cone);
  const auto r = check_coarea_slope(f, {0.3, 0.6});
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.inverse_slope == doctest::Approx(2 * pi * (1 - row.t)).epsilon(0.02));
    CHECK(row.measure == doctest::Approx(pi * (1 - row.t) * (1 - row.t)).epsilon(0.02));
  }
}

TEST_CASE("constant field has no regular levels") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 32);
  const auto f = field::sample(g, [](Point) { return 1.0; });
  const auto r = check_coarea_slope(f, quantile_levels(f, 8));
  CHECK(r.rows.empty());
  const auto e = check_profile_energy(f, 2.0);
  CHECK(e.lhs == 0.0);
  CHECK(e.holds(0.0));
}

TEST_CASE("level Holder inequality") {
  const auto f = field::sample(disk_grid(1.0 / 128), cone);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto s = check_level_holder(f, 0.5, p);
    // |grad f| = 1 on the contour: equality.
    CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(0.03));
    CHECK(s.lhs == doctest::Approx(std::pow(pi, 1 - p)).epsilon(0.03));
  }
  const auto g = field::sample(disk_grid(1.0 / 128), paraboloid);
  const auto near_one = check_level_holder(g, 0.5, 1.0 + 1e-6);
  CHECK(near_one.lhs / near_one.rhs == doctest::Approx(1.0).epsilon(1e-4));
  for (double p : {1.5, 2.5}) CHECK(check_level_holder(g, 0.5, p).holds(0.02));
  CHECK_THROWS_AS(check_level_holder(g, 2.0, 2.0), ValidationError);
}

TEST_CASE("profile energy inequality") {
  const auto f = field::sample(disk_grid(1.0 / 128), cone);
  const auto eq = check_profile_energy(f, 2.0);
  CHECK(eq.lhs == doctest::Approx(pi).epsilon(0.03));
  CHECK(eq.rhs == doctest::Approx(pi).epsilon(0.03));

  std::mt19937_64 rng(23);
  for (const auto& d : domains::random_concave_suite(11, 5)) {
    const auto g = raster::rasterize(d, d.diameter() / 128);
    const auto u = field::random_bump_field(g, rng);
    for (double p : {1.5, 2.0, 3.0}) CHECK(check_profile_energy(u, p).holds(0.02));
  }
}

TEST_CASE("rearrangement energy factor") {
  const auto g = raster::rasterize(domains::half_disk(1.0, 256), 1.0 / 128);
  const auto f = field::sample(g, cone);
  const auto s = check_rearrangement_energy(f, 2.0);
  // Integral of |grad u*|^2 is pi, twice that of the half-disk cone.
  CHECK(s.lhs == doctest::Approx(pi).epsilon(0.02));
  CHECK(s.lhs / (s.rhs / 2.0) == doctest::Approx(2.0).epsilon(0.02));

  const auto zero = field::sample(g, [](Point) { return 0.0; });
  const auto z = check_rearrangement_energy(zero, 2.0);
  CHECK(z.lhs == 0.0);
  CHECK(z.holds(0.0));
}

TEST_CASE("rearrangement energy preconditions") {
  const auto g = raster::rasterize(domains::half_disk(), 1.0 / 64);
  const auto f = field::sample(g, cone);
  CHECK_THROWS_AS(check_rearrangement_energy(f, 1.0), PreconditionError);
  const auto traced = field::sample(g, [](Point) { return 1.0; }, field::TraceMode::kSample);
  CHECK_THROWS_AS(check_rearrangement_energy(traced, 2.0), PreconditionError);
  quotients::CounterexampleParams params;
  params.a = 10.0;
  const auto bad = quotients::counterexample_domain(params);
  const auto gb = raster::rasterize(bad, bad.diameter() / 64);
  const auto fb = field::sample(gb, [](Point) { return 1.0; });
  CHECK_THROWS_AS(check_rearrangement_energy(fb, 2.0), PreconditionError);
}

TEST_CASE("gradient norms") {
  const auto g = raster::rasterize(domains::unit_square(false), 1.0 / 64);
  // The sampled trace makes the odd reflection exact for a linear field.
  const auto lin = field::sample(g, [](Point x) { return x.x; }, field::TraceMode::kSample);
  CHECK(gradient_lp_norm(lin, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  const auto f = field::sample(disk_grid(1.0 / 128), cone);
  CHECK(gradient_lp_norm(f, 2.0) == doctest::Approx(std::sqrt(pi)).epsilon(0.02));
  CHECK(gradient_lp_norm(f.scaled(3.0), 1.5) == doctest::Approx(3.0 * gradient_lp_norm(f, 1.5)).epsilon(1e-12));
}
