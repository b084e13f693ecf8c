#include "freebound/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freebound/errors.hpp"

namespace freebound::domains {

using geometry::EdgeLabel;
using geometry::Point;
using geometry::Ring;

namespace {

constexpr double kPi = std::numbers::pi;

Ring make_ring(std::vector<Point> vertices, std::vector<EdgeLabel> labels) {
  return Ring{std::move(vertices), std::move(labels)};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Point rotate(Point p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

LabeledDomain bitten_convex(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int k = uniform_int(rng, 5, 12);
    const double ax = uniform(rng, 1.0, 2.0);
    const double ay = uniform(rng, 0.6, 1.5);
    const double tilt = uniform(rng, 0.0, kPi);
    std::vector<double> angles(k);
    for (auto& a : angles) a = uniform(rng, 0.0, 2.0 * kPi);
    std::sort(angles.begin(), angles.end());
    std::vector<Point> hull;
    for (double a : angles) hull.push_back(rotate({ax * std::cos(a), ay * std::sin(a)}, tilt));

    std::size_t longest = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (geometry::distance(hull[i], hull[(i + 1) % hull.size()]) >
          geometry::distance(hull[longest], hull[(longest + 1) % hull.size()])) {
        longest = i;
      }
    }
    const Point p = hull[longest];
    const Point q = hull[(longest + 1) % hull.size()];
    const double edge = geometry::distance(p, q);
    if (edge < 0.3) continue;
    const Point along = (1.0 / edge) * (q - p);
    const Point inward{-along.y, along.x};
    const double t0 = uniform(rng, 0.1, 0.3);
    const double t1 = uniform(rng, 0.7, 0.9);
    const Point a = p + (t0 * edge) * along;
    const Point b = p + (t1 * edge) * along;
    const Point mid = 0.5 * (a + b);
    const double half = 0.5 * (t1 - t0) * edge;
    const int segments = uniform_int(rng, 2, 32);
    double depth = uniform(rng, 0.2, 0.8) * half;

    for (int shrink = 0; shrink < 6; ++shrink, depth *= 0.5) {
      std::vector<Point> vertices;
      std::vector<EdgeLabel> labels;
      for (std::size_t i = 0; i < hull.size(); ++i) {
        vertices.push_back(hull[i]);
        labels.push_back(EdgeLabel::kFixed);
        if (i != longest) continue;
        // p -> a is fixed, the rim a -> b is free, b -> q is fixed.
        for (int j = 0; j < segments; ++j) {
          const double s = kPi * j / segments;
          vertices.push_back(mid + (-half * std::cos(s)) * along + (depth * std::sin(s)) * inward);
          labels.push_back(EdgeLabel::kFree);
        }
        vertices.push_back(b);
        labels.push_back(EdgeLabel::kFixed);
      }
      try {
        return LabeledDomain(make_ring(std::move(vertices), std::move(labels)));
      } catch (const ValidationError&) {
      }
    }
  }
  throw ValidationError("could not generate a bitten convex domain");
}

LabeledDomain flat_base(std::mt19937_64& rng) {
  double coeff[3], phase[3];
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    coeff[k] = uniform(rng, -1.0, 1.0);
    phase[k] = uniform(rng, 0.0, 2.0 * kPi);
    total += std::abs(coeff[k]);
  }
  const double amplitude = uniform(rng, 0.0, 0.4) / std::max(total, 1e-12);
  const double stretch = uniform(rng, 0.6, 1.6);
  const int m = 48;
  std::vector<Point> vertices;
  std::vector<EdgeLabel> labels;
  for (int j = 0; j <= m; ++j) {
    const double phi = kPi * j / m;
    double g = 0.0;
    for (int k = 0; k < 3; ++k) g += coeff[k] * std::sin((k + 1) * phi + phase[k]);
    const double r = 1.0 + std::sin(phi) * amplitude * g;
    vertices.push_back({r * std::cos(phi), stretch * r * std::sin(phi)});
    labels.push_back(j == m ? EdgeLabel::kFree : EdgeLabel::kFixed);
  }
  return LabeledDomain(make_ring(std::move(vertices), std::move(labels)));
}

LabeledDomain ellipse_shell(std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double ea = uniform(rng, 0.3, 1.0);
    const double eb = uniform(rng, 0.3, 1.0);
    const double tilt = uniform(rng, 0.0, kPi);
    const double start = uniform(rng, 0.0, 2.0 * kPi);
    const double span = uniform(rng, 0.5 * kPi, 1.3 * kPi);
    const double reach = std::max(ea, eb);
    const double wobble = uniform(rng, 0.0, 0.3);
    const double freq = uniform_int(rng, 1, 4);
    const double shift = uniform(rng, 0.0, 2.0 * kPi);

    // Radius of the ellipse along direction psi.
    const auto inner_radius = [&](double psi) {
      const double local = psi - tilt;
      const double c = std::cos(local) / ea, s = std::sin(local) / eb;
      return 1.0 / std::sqrt(c * c + s * s);
    };
    const auto outer_radius = [&](double psi) {
      return reach * (1.6 + wobble * std::sin(freq * (psi - start) + shift));
    };
    const auto polar = [](double r, double psi) { return Point{r * std::cos(psi), r * std::sin(psi)}; };

    const int n_out = 48, n_in = 32;
    std::vector<Point> vertices;
    std::vector<EdgeLabel> labels;
    for (int j = 0; j <= n_out; ++j) {
      const double psi = start + span * j / n_out;
      vertices.push_back(polar(outer_radius(psi), psi));
      labels.push_back(EdgeLabel::kFixed);
    }
    for (int j = n_in; j >= 0; --j) {
      const double psi = start + span * j / n_in;
      vertices.push_back(polar(inner_radius(psi), psi));
      labels.push_back(j == 0 ? EdgeLabel::kFixed : EdgeLabel::kFree);
    }
    try {
      return LabeledDomain(make_ring(std::move(vertices), std::move(labels)));
    } catch (const ValidationError&) {
    }
  }
  throw ValidationError("could not generate an ellipse shell domain");
}

}  // namespace

LabeledDomain half_disk(double radius, int arc_segments) {
  if (!(radius > 0.0) || arc_segments < 2) throw ValidationError("bad half-disk parameters");
  std::vector<Point> vertices{{-radius, 0.0}};
  std::vector<EdgeLabel> labels{EdgeLabel::kFree};
  for (int j = 0; j < arc_segments; ++j) {
    const double phi = kPi * j / arc_segments;
    vertices.push_back({radius * std::cos(phi), radius * std::sin(phi)});
    labels.push_back(EdgeLabel::kFixed);
  }
  return LabeledDomain(make_ring(std::move(vertices), std::move(labels)));
}

LabeledDomain unit_square(bool bottom_free) {
  return LabeledDomain(make_ring(
      {{0, 0}, {1, 0}, {1, 1}, {0, 1}},
      {bottom_free ? EdgeLabel::kFree : EdgeLabel::kFixed, EdgeLabel::kFixed, EdgeLabel::kFixed,
       EdgeLabel::kFixed}));
}

LabeledDomain disk(double radius, int segments) {
  if (!(radius > 0.0) || segments < 3) throw ValidationError("bad disk parameters");
  std::vector<Point> vertices;
  for (int j = 0; j < segments; ++j) {
    const double phi = 2.0 * kPi * j / segments;
    vertices.push_back({radius * std::cos(phi), radius * std::sin(phi)});
  }
  return LabeledDomain(make_ring(vertices, std::vector<EdgeLabel>(vertices.size(), EdgeLabel::kFixed)));
}

LabeledDomain l_shape() {
  std::vector<EdgeLabel> labels(6, EdgeLabel::kFixed);
  labels[0] = EdgeLabel::kFree;
  return LabeledDomain(make_ring({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}, labels));
}

LabeledDomain square_annulus() {
  Ring outer = make_ring({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, std::vector<EdgeLabel>(4, EdgeLabel::kFixed));
  Ring hole = make_ring({{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}, {0.5, -0.5}},
                        std::vector<EdgeLabel>(4, EdgeLabel::kFree));
  return LabeledDomain(std::move(outer), {std::move(hole)});
}

LabeledDomain right_trapezoid() {
  return LabeledDomain(make_ring({{0, 0}, {2, 0}, {2, 1}, {0, 2}},
                                 {EdgeLabel::kFree, EdgeLabel::kFixed, EdgeLabel::kFixed, EdgeLabel::kFixed}));
}

LabeledDomain scaled(const LabeledDomain& domain, double factor) {
  const auto scale = [&](Ring ring) {
    for (auto& v : ring.vertices) v = factor * v;
    return ring;
  };
  std::vector<Ring> holes;
  for (const auto& hole : domain.holes()) holes.push_back(scale(hole));
  return LabeledDomain(scale(domain.outer()), std::move(holes));
}

LabeledDomain random_concave_domain(std::mt19937_64& rng, RandomFamily family) {
  switch (family) {
    case RandomFamily::kBittenConvex:
      return bitten_convex(rng);
    case RandomFamily::kFlatBase:
      return flat_base(rng);
    case RandomFamily::kEllipseShell:
      return ellipse_shell(rng);
  }
  throw ValidationError("unknown random family");
}

std::vector<LabeledDomain> random_concave_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<LabeledDomain> suite;
  suite.reserve(static_cast<std::size_t>(std::max(count, 0)));
  constexpr RandomFamily kCycle[] = {RandomFamily::kBittenConvex, RandomFamily::kFlatBase,
                                     RandomFamily::kEllipseShell};
  for (int i = 0; i < count; ++i) suite.push_back(random_concave_domain(rng, kCycle[i % 3]));
  return suite;
}

}  // namespace freebound::domains
