#pragma once

// Closed-form sharp constants for the Sobolev, Moser-Trudinger and
// isoperimetric inequalities in R^n, n >= 2.

namespace freebound::constants {

class Dimension {
 public:
  // Throws DomainError for n < 2.
  explicit Dimension(int n);

  int value() const noexcept { return n_; }

 private:
  int n_;
};

struct Exponent {
  double p;
  double p_star;  // n p / (n - p)
};

struct IsoperimetricConstants {
  double standard;  // pi^{1/2} n / Gamma(1 + n/2)^{1/n}
  double free;      // pi^{1/2} n / (2 Gamma(1 + n/2))^{1/n}
};

struct SharpConstants {
  double k_np;
  double beta_n;
  double omega_nm1;
  double iso_free;
  double iso_std;
};

// Gamma function for x > 0; DomainError otherwise.
double gamma_fn(double x);

// Surface area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(Dimension n);

// Best constant k(n,p) of the Sobolev inequality on R^n, 1 <= p < n.
// p = 1 is evaluated through its closed limit form.
double sobolev_best_constant(Dimension n, double p);

double critical_exponent(Dimension n, double p);
Exponent make_exponent(Dimension n, double p);

// beta_n = n (omega_{n-1} / 2)^{1/(n-1)}, half the classical Moser exponent
// raised appropriately.
double moser_trudinger_beta(Dimension n);

IsoperimetricConstants isoperimetric_constants(Dimension n);

SharpConstants sharp_constants(Dimension n, double p);

}  // namespace freebound::constants
