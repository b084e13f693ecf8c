#include "freebound/constants.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "freebound/errors.hpp"

namespace freebound::constants {

namespace {

void require_exponent(Dimension n, double p) {
  if (!std::isfinite(p) || p < 1.0 || p >= n.value()) {
    throw DomainError("exponent p = " + std::to_string(p) +
                      " outside [1, n) for n = " + std::to_string(n.value()));
  }
}

}  // namespace

Dimension::Dimension(int n) : n_(n) {
  if (n < 2) throw DomainError("dimension must be >= 2, got " + std::to_string(n));
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma_fn requires a positive finite argument");
  }
  return std::tgamma(x);
}

double sphere_area(Dimension n) {
  const double half = 0.5 * n.value();
  return 2.0 * std::pow(std::numbers::pi, half) / gamma_fn(half);
}

double sobolev_best_constant(Dimension n, double p) {
  require_exponent(n, p);
  const double nd = n.value();
  const double log_pi = std::log(std::numbers::pi);
  if (p == 1.0) {
    // The factor ((p-1)/(n-p))^{1-1/p} tends to 1 and Gamma(n/p) / Gamma(n) -> 1.
    return std::exp(-0.5 * log_pi - std::log(nd) + std::lgamma(1.0 + 0.5 * nd) / nd);
  }
  const double log_ratio = std::lgamma(1.0 + 0.5 * nd) + std::lgamma(nd) -
                           std::lgamma(nd / p) - std::lgamma(1.0 + nd - nd / p);
  const double log_k = -0.5 * log_pi - std::log(nd) / p +
                       (1.0 - 1.0 / p) * std::log((p - 1.0) / (nd - p)) +
                       log_ratio / nd;
  return std::exp(log_k);
}

double critical_exponent(Dimension n, double p) {
  require_exponent(n, p);
  return n.value() * p / (n.value() - p);
}

Exponent make_exponent(Dimension n, double p) { return {p, critical_exponent(n, p)}; }

double moser_trudinger_beta(Dimension n) {
  const double nd = n.value();
  return nd * std::pow(0.5 * sphere_area(n), 1.0 / (nd - 1.0));
}

IsoperimetricConstants isoperimetric_constants(Dimension n) {
  const double nd = n.value();
  const double g = gamma_fn(1.0 + 0.5 * nd);
  const double numerator = std::sqrt(std::numbers::pi) * nd;
  return {numerator / std::pow(g, 1.0 / nd), numerator / std::pow(2.0 * g, 1.0 / nd)};
}

SharpConstants sharp_constants(Dimension n, double p) {
  const auto iso = isoperimetric_constants(n);
  return {sobolev_best_constant(n, p), moser_trudinger_beta(n), sphere_area(n), iso.free,
          iso.standard};
}

}  // namespace freebound::constants
