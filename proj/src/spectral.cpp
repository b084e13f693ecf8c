#include "freebound/spectral.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include "freebound/errors.hpp"

namespace freebound::spectral {

SpectralProblem assemble(const geometry::LabeledDomain& domain, double h) {
  SpectralProblem problem;
  problem.grid = raster::rasterize(domain, h);
  problem.h = h;
  const auto& grid = *problem.grid;
  const double inv = 1.0 / (h * h);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(grid.size() * 5);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double diagonal = 0.0;
    for (int d = 0; d < 4; ++d) {
      switch (grid.faces[k][d]) {
        case raster::FaceKind::kInterior:
          diagonal += inv;
          entries.emplace_back(static_cast<int>(k), grid.neighbor(k, d), -inv);
          break;
        case raster::FaceKind::kFixed:
          diagonal += 2.0 * inv;
          problem.has_fixed = true;
          break;
        case raster::FaceKind::kFree:
          break;
      }
    }
    entries.emplace_back(static_cast<int>(k), static_cast<int>(k), diagonal);
  }
  const auto n = static_cast<Eigen::Index>(grid.size());
  problem.op.resize(n, n);
  problem.op.setFromTriplets(entries.begin(), entries.end());
  return problem;
}

double quadratic_form(const SpectralProblem& problem, const Eigen::VectorXd& u) {
  const auto& grid = *problem.grid;
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double uk = u[static_cast<Eigen::Index>(k)];
    for (int d = 0; d < 4; ++d) {
      const auto kind = grid.faces[k][d];
      if (kind == raster::FaceKind::kFixed) {
        sum += 2.0 * uk * uk;
      } else if (kind == raster::FaceKind::kInterior && (d == raster::kEast || d == raster::kNorth)) {
        const double diff = uk - u[grid.neighbor(k, d)];
        sum += diff * diff;
      }
    }
  }
  return sum;
}

Eigenpair principal_frequency(const SpectralProblem& problem, double tol, std::uint64_t seed, int max_outer) {
  if (!problem.has_fixed) throw PreconditionError("principal frequency needs a fixed boundary face");
  const auto n = problem.op.rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = unit(rng);
  x.normalize();

  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::IncompleteCholesky<double>> solver;
  solver.setTolerance(1e-10);
  solver.setMaxIterations(static_cast<int>(std::max<Eigen::Index>(1000, 4 * n)));
  solver.compute(problem.op);
  if (solver.info() != Eigen::Success) throw ConvergenceError("preconditioner setup failed", 0, NAN);

  double lambda = x.dot(problem.op * x);
  double residual = NAN;
  for (int it = 1; it <= max_outer; ++it) {
    Eigen::VectorXd y = solver.solveWithGuess(x, x / lambda);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("inner linear solve did not converge", it, solver.error());
    }
    y.normalize();
    const Eigen::VectorXd ay = problem.op * y;
    const double next = y.dot(ay);
    residual = (ay - next * y).norm() / next;
    const bool done = std::abs(next - lambda) <= tol * next;
    lambda = next;
    x = std::move(y);
    if (done) {
      if (x.sum() < 0.0) x = -x;
      return {lambda, std::move(x), it, residual};
    }
  }
  throw ConvergenceError("inverse iteration did not converge", max_outer, residual);
}

double bessel_j0(double x) {
  // sum_k (-1)^k (x^2/4)^k / (k!)^2
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2 * q) break;
  }
  return sum;
}

double first_bessel_zero() {
  double lo = 2.0, hi = 3.0;  // J_0(2) > 0 > J_0(3)
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double half_ball_reference(double volume) {
  if (!(volume > 0.0)) throw DomainError("volume must be positive");
  const double j = first_bessel_zero();
  return j * j * std::numbers::pi / (2.0 * volume);
}

FrequencyReport check_principal_frequency(const geometry::LabeledDomain& domain, double h, double tol) {
  const auto concavity = geometry::is_concave_free_boundary(domain);
  if (!concavity.concave) throw PreconditionError("free boundary is not concave");
  const auto problem = assemble(domain, h);
  const auto pair = principal_frequency(problem, tol);
  FrequencyReport report;
  report.lambda = pair.lambda;
  report.reference = half_ball_reference(geometry::area(domain));
  report.margin = report.lambda - report.reference;
  report.h = h;
  report.iterations = pair.iterations;
  report.residual = pair.residual;
  report.vacuous_concavity = concavity.vacuous;
  return report;
}

void write_coordinate_text(const SpectralProblem& problem, std::ostream& out) {
  out.precision(17);
  for (int col = 0; col < problem.op.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(problem.op, col); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace freebound::spectral
