#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "freebound/domains.hpp"
#include "freebound/errors.hpp"
#include "freebound/quotients.hpp"
#include "freebound/rearrange.hpp"
#include "freebound/spectral.hpp"

using namespace freebound;
using namespace freebound::spectral;
using std::numbers::pi;

namespace {

constexpr double kJ01 = 2.404825557695773;

double lambda_of(const geometry::LabeledDomain& d, double h) {
  return principal_frequency(assemble(d, h)).lambda;
}

geometry::LabeledDomain all_free_square() {
  using geometry::EdgeLabel;
  geometry::Ring ring{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, std::vector<EdgeLabel>(4, EdgeLabel::kFree)};
  return geometry::LabeledDomain(ring);
}

}  // namespace

TEST_CASE("Bessel function and its first zero") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-14));
  CHECK(first_bessel_zero() == doctest::Approx(kJ01).epsilon(1e-10));
  CHECK(std::abs(bessel_j0(first_bessel_zero())) < 1e-10);
}

TEST_CASE("half-ball reference") {
  const double j = first_bessel_zero();
  CHECK(half_ball_reference(pi / 2) == doctest::Approx(j * j).epsilon(1e-14));
  CHECK(half_ball_reference(1.0) == doctest::Approx(j * j * pi / 2).epsilon(1e-14));
  CHECK(half_ball_reference(1.0) == doctest::Approx(9.0833).epsilon(1e-4));
  CHECK(half_ball_reference(2.0) == doctest::Approx(half_ball_reference(1.0) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(half_ball_reference(0.0), DomainError);
}

TEST_CASE("operator is symmetric and positive semidefinite") {
  const auto prob = assemble(domains::right_trapezoid(), 1.0 / 32);
  const SparseMatrix diff = prob.op - SparseMatrix(prob.op.transpose());
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  CHECK(worst <= 1e-14);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd u(prob.op.rows());
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
    const double form = quadratic_form(prob, u);
    CHECK(form >= 0.0);
    CHECK(form == doctest::Approx(u.dot(prob.op * u) * prob.h * prob.h).epsilon(1e-10));
  }
}

TEST_CASE("unit square eigenvalues") {
  CHECK(lambda_of(domains::unit_square(false), 1.0 / 64) == doctest::Approx(2 * pi * pi).epsilon(0.01));
  CHECK(lambda_of(domains::unit_square(true), 1.0 / 64) == doctest::Approx(1.25 * pi * pi).epsilon(0.01));
}

TEST_CASE("second-order convergence on the fixed square") {
  const auto sq = domains::unit_square(false);
  const double a = lambda_of(sq, 1.0 / 16), b = lambda_of(sq, 1.0 / 32), c = lambda_of(sq, 1.0 / 64);
  const double ratio = (a - b) / (b - c);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("eigenvalue scales as 1/c^2") {
  const auto tz = domains::right_trapezoid();
  const double base = lambda_of(tz, 1.0 / 32);
  const double big = lambda_of(domains::scaled(tz, 2.0), 2.0 / 32);
  CHECK(big == doctest::Approx(base / 4).epsilon(1e-8));
}

TEST_CASE("reflection identity: half-disk with free diameter against the full disk") {
  const double half = lambda_of(domains::half_disk(1.0, 256), 1.0 / 64);
  const double full = lambda_of(domains::disk(1.0, 256), 1.0 / 64);
  CHECK(half == doctest::Approx(kJ01 * kJ01).epsilon(0.02));
  CHECK(full == doctest::Approx(kJ01 * kJ01).epsilon(0.02));
  CHECK(half == doctest::Approx(full).epsilon(0.02));
}

TEST_CASE("solver behavior") {
  const auto prob = assemble(domains::l_shape(), 1.0 / 16);
  const auto a = principal_frequency(prob);
  const auto b = principal_frequency(prob);
  CHECK(a.lambda == b.lambda);
  CHECK(a.residual < 1e-4);
  CHECK(a.vector.norm() == doctest::Approx(1.0));
  CHECK(a.vector.sum() > 0.0);
  CHECK_THROWS_AS(principal_frequency(prob, 1e-15, 0x5EED, 1), ConvergenceError);
  CHECK_THROWS_AS(principal_frequency(assemble(all_free_square(), 1.0 / 16)), PreconditionError);
}

TEST_CASE("principal frequency against the half-ball reference") {
  SUBCASE("half-disk is the equality case") {
    const auto r = check_principal_frequency(domains::half_disk(1.0, 256), 1.0 / 64);
    CHECK(std::abs(r.margin) <= 0.02 * r.reference);
    CHECK_FALSE(r.vacuous_concavity);
  }
  SUBCASE("square with free bottom") {
    const auto r = check_principal_frequency(domains::unit_square(true), 1.0 / 64);
    CHECK(r.lambda == doctest::Approx(12.337).epsilon(0.01));
    CHECK(r.reference == doctest::Approx(9.0833).epsilon(1e-4));
    CHECK(r.margin > 0.0);
  }
  SUBCASE("empty free boundary is flagged") {
    const auto r = check_principal_frequency(domains::unit_square(false), 1.0 / 64);
    CHECK(r.vacuous_concavity);
    CHECK(r.lambda >= r.reference);
  }
  SUBCASE("non-concave free boundary") {
    quotients::CounterexampleParams params;
    params.a = 10.0;
    const auto d = quotients::counterexample_domain(params);
    CHECK_THROWS_AS(check_principal_frequency(d, d.diameter() / 64), PreconditionError);
  }
}

TEST_CASE("rearranged eigenfunction energy stays within the factor 2") {
  const auto prob = assemble(domains::half_disk(1.0, 256), 1.0 / 64);
  const auto pair = principal_frequency(prob);
  std::vector<double> values(static_cast<std::size_t>(pair.vector.size()));
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = std::max(0.0, pair.vector[static_cast<Eigen::Index>(k)]);
  const field::ScalarField u(prob.grid, values);
  CHECK(rearrange::check_rearrangement_energy(u, 2.0).holds(0.02));
}

TEST_CASE("coordinate dump lists every stored entry") {
  const auto prob = assemble(domains::unit_square(true), 1.0 / 8);
  std::ostringstream out;
  write_coordinate_text(prob, out);
  std::istringstream in(out.str());
  int rows = 0;
  int r = 0, c = 0;
  double v = 0.0;
  while (in >> r >> c >> v) {
    CHECK(v == doctest::Approx(prob.op.coeff(r, c)));
    ++rows;
  }
  CHECK(rows == prob.op.nonZeros());
}
