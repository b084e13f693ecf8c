#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "freebound/constants.hpp"
#include "freebound/errors.hpp"

using namespace freebound;
using namespace freebound::constants;
using std::numbers::pi;

namespace {

// ln Gamma by upward recurrence to x >= 30 and the Stirling series; shares
// nothing with the library's implementation.
double log_gamma_oracle(double x) {
  double shift = 0.0;
  while (x < 30.0) {
    shift -= std::log(x);
    x += 1.0;
  }
  const double inv = 1.0 / x, inv2 = inv * inv;
  const double series =
      inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680 - inv2 / 1188))));
  return shift + (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * pi) + series;
}

// Composite Simpson on [a, b].
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// ||U||_{p*} / ||grad U||_p for the radial extremal U(r) = (1 + r^{p/(p-1)})^{-(n-p)/p}
// in R^n, integrated in r = s / (1 - s).
double extremal_quotient(int n, double p) {
  const double q = p / (p - 1.0), a = (n - p) / p, ps = n * p / (n - p);
  const double area = 2.0 * std::pow(pi, n / 2.0) / std::exp(log_gamma_oracle(n / 2.0));
  auto u = [&](double r) { return std::pow(1.0 + std::pow(r, q), -a); };
  auto du = [&](double r) { return a * q * std::pow(r, q - 1.0) * std::pow(1.0 + std::pow(r, q), -a - 1.0); };
  auto on_s = [&](auto g) {
    return [=](double s) {
      if (s <= 0.0 || s >= 1.0) return 0.0;
      const double r = s / (1.0 - s);
      return g(r) * std::pow(r, n - 1) / ((1.0 - s) * (1.0 - s));
    };
  };
  const double num = area * simpson(on_s([&](double r) { return std::pow(u(r), ps); }), 0.0, 1.0, 400000);
  const double den = area * simpson(on_s([&](double r) { return std::pow(du(r), p); }), 0.0, 1.0, 400000);
  return std::pow(num, 1.0 / ps) / std::pow(den, 1.0 / p);
}

}  // namespace

TEST_CASE("gamma at integers and one half") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::exp(log_gamma_oracle(0.5))).epsilon(1e-13));
}

TEST_CASE("gamma agrees with the Stirling oracle") {
  for (double x = 0.3; x < 40.0; x += 0.37) {
    CHECK(std::log(gamma_fn(x)) == doctest::Approx(log_gamma_oracle(x)).epsilon(1e-12));
  }
}

TEST_CASE("gamma recurrence on [0.5, 49]") {
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = 0.5 + 48.5 * k / 999.0;
    const double rel = std::abs(gamma_fn(x + 1.0) - x * gamma_fn(x)) / (x * gamma_fn(x));
    worst = std::max(worst, rel);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(gamma_fn(std::nan("")), DomainError);
}

TEST_CASE("dimension and exponent validation") {
  CHECK_THROWS_AS(Dimension(1), DomainError);
  CHECK_THROWS_AS(critical_exponent(Dimension(2), 2.0), DomainError);
  CHECK_THROWS_AS(critical_exponent(Dimension(2), 0.5), DomainError);
  CHECK_THROWS_AS(sobolev_best_constant(Dimension(3), 3.5), DomainError);
}

TEST_CASE("critical exponent") {
  CHECK(critical_exponent(Dimension(3), 2.0) == 6.0);
  CHECK(critical_exponent(Dimension(2), 1.0) == 2.0);
  CHECK(critical_exponent(Dimension(4), 2.0) == 4.0);
  const auto e = make_exponent(Dimension(2), 1.5);
  CHECK(e.p == 1.5);
  CHECK(e.p_star == 6.0);
}

TEST_CASE("k(2,1) is 1/(2 sqrt pi)") {
  CHECK(sobolev_best_constant(Dimension(2), 1.0) == doctest::Approx(0.2820947918).epsilon(1e-10));
  CHECK(sobolev_best_constant(Dimension(2), 1.0) == doctest::Approx(0.5 / std::sqrt(pi)).epsilon(1e-14));
}

TEST_CASE("k(n,p) matches the quotient of the radial extremal") {
  CHECK(sobolev_best_constant(Dimension(3), 2.0) == doctest::Approx(extremal_quotient(3, 2.0)).epsilon(1e-6));
  CHECK(sobolev_best_constant(Dimension(2), 1.5) == doctest::Approx(extremal_quotient(2, 1.5)).epsilon(1e-6));
  CHECK(sobolev_best_constant(Dimension(4), 1.8) == doctest::Approx(extremal_quotient(4, 1.8)).epsilon(1e-6));
  // p = 2 closed form: (pi n (n-2))^{-1/2} (Gamma(n) / Gamma(n/2))^{1/n}
  const double at = std::sqrt(1.0 / (3.0 * pi)) * std::cbrt(2.0 / (0.5 * std::sqrt(pi)));
  CHECK(sobolev_best_constant(Dimension(3), 2.0) == doctest::Approx(at).epsilon(1e-12));
}

TEST_CASE("k(n,p) is continuous at p = 1") {
  for (int n : {2, 3, 5}) {
    const double k1 = sobolev_best_constant(Dimension(n), 1.0);
    double previous = std::numeric_limits<double>::infinity();
    for (double d : {1e-3, 1e-6, 1e-9}) {
      const double gap = std::abs(sobolev_best_constant(Dimension(n), 1.0 + d) - k1);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous <= 1e-6 * k1);
  }
}

TEST_CASE("Moser-Trudinger exponent") {
  CHECK(moser_trudinger_beta(Dimension(2)) == doctest::Approx(2.0 * pi).epsilon(1e-14));
  CHECK(moser_trudinger_beta(Dimension(3)) == doctest::Approx(3.0 * std::sqrt(2.0 * pi)).epsilon(1e-14));
  for (int n = 2; n <= 8; ++n) {
    const double omega = sphere_area(Dimension(n));
    const double alt = n * std::pow(omega, 1.0 / (n - 1)) * std::pow(2.0, -1.0 / (n - 1));
    CHECK(moser_trudinger_beta(Dimension(n)) == doctest::Approx(alt).epsilon(1e-13));
  }
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(Dimension(2)) == doctest::Approx(2.0 * pi).epsilon(1e-14));
  CHECK(sphere_area(Dimension(3)) == doctest::Approx(4.0 * pi).epsilon(1e-14));
}

TEST_CASE("isoperimetric constants") {
  const auto c2 = isoperimetric_constants(Dimension(2));
  CHECK(c2.standard == doctest::Approx(2.0 * std::sqrt(pi)).epsilon(1e-14));
  CHECK(c2.free == doctest::Approx(std::sqrt(2.0 * pi)).epsilon(1e-14));
  const auto c3 = isoperimetric_constants(Dimension(3));
  const double g52 = 0.75 * std::sqrt(pi);
  CHECK(c3.standard == doctest::Approx(std::sqrt(pi) * 3.0 / std::cbrt(g52)).epsilon(1e-13));
  CHECK(c3.standard == doctest::Approx(4.8360).epsilon(1e-4));
  CHECK(c3.free == doctest::Approx(3.8383).epsilon(1e-4));
  for (int n = 2; n <= 10; ++n) {
    const auto c = isoperimetric_constants(Dimension(n));
    CHECK(c.free < c.standard);
    CHECK(c.free * std::pow(2.0, 1.0 / n) == doctest::Approx(c.standard).epsilon(1e-15));
  }
}

TEST_CASE("sharp constants bundle") {
  const auto s = sharp_constants(Dimension(2), 1.0);
  CHECK(s.k_np == doctest::Approx(0.5 / std::sqrt(pi)));
  CHECK(s.beta_n == doctest::Approx(2.0 * pi));
  CHECK(s.iso_free == doctest::Approx(std::sqrt(2.0 * pi)));
  CHECK(s.iso_std == doctest::Approx(2.0 * std::sqrt(pi)));
  CHECK(s.omega_nm1 == doctest::Approx(2.0 * pi));
}
