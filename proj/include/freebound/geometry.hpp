#pragma once

// Polygonal 2-D domains whose boundary edges are tagged as fixed (Dirichlet,
// Gamma_1) or free (Gamma_2), together with the exact polygon operations used
// by the isoperimetric checks and the reflection symmetrization.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace freebound::geometry {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

double distance_to_segment(Point p, Point a, Point b);

enum class EdgeLabel : std::uint8_t { kFixed, kFree };

std::string_view to_string(EdgeLabel label);
// Accepts "fixed" / "free"; throws ValidationError otherwise.
EdgeLabel parse_label(std::string_view text);

// A closed polygonal ring; labels[i] tags the edge vertices[i] -> vertices[i+1].
struct Ring {
  std::vector<Point> vertices;
  std::vector<EdgeLabel> labels;
};

struct Edge {
  Point a;
  Point b;
  EdgeLabel label;

  double length() const { return distance(a, b); }
};

struct BoundingBox {
  Point min;
  Point max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
};

// Shoelace signed area; positive for counterclockwise rings.
double signed_area(const std::vector<Point>& ring);

// Simple polygon with optional holes and a fixed/free tag on every edge.
// The outer ring is stored counterclockwise and holes clockwise; input of
// either orientation is accepted. Immutable after construction.
class LabeledDomain {
 public:
  // Throws ValidationError when a ring is degenerate, rings intersect, a hole
  // lies outside the outer ring, or the free edges do not form a single chain.
  explicit LabeledDomain(Ring outer, std::vector<Ring> holes = {});

  const Ring& outer() const noexcept { return outer_; }
  const std::vector<Ring>& holes() const noexcept { return holes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Even-odd point-in-polygon over all rings. Points on the boundary may
  // report either value; combine with distance_to_boundary when it matters.
  bool contains(Point p) const;
  double distance_to_boundary(Point p) const;
  // Distance to the edges carrying `label`; +inf when there are none.
  double distance_to_boundary(Point p, EdgeLabel label) const;
  EdgeLabel nearest_label(Point p) const;

  BoundingBox bounds() const noexcept { return bounds_; }
  double diameter() const;

  bool has_free_boundary() const noexcept { return !free_chain_.empty(); }
  // Ordered vertices of the free chain; a closed chain repeats its first point.
  const std::vector<Point>& free_chain() const noexcept { return free_chain_; }
  bool free_chain_closed() const noexcept { return free_chain_closed_; }

 private:
  Ring outer_;
  std::vector<Ring> holes_;
  std::vector<Edge> edges_;
  BoundingBox bounds_;
  std::vector<Point> free_chain_;
  bool free_chain_closed_ = false;
};

double area(const LabeledDomain& domain);
double boundary_length(const LabeledDomain& domain, EdgeLabel label);

struct ConcavityResult {
  bool concave = true;
  // True when the domain has no free boundary, so the condition holds trivially.
  bool vacuous = false;
  std::optional<std::pair<Point, Point>> witness;
};

// Samples `samples` points along the free chain (by arclength) and tests the
// quarter, mid and three-quarter points of every chord against the interior.
ConcavityResult is_concave_free_boundary(const LabeledDomain& domain, int samples = 64);

struct IsoperimetricReport {
  double gamma1_length = 0.0;
  double area = 0.0;
  double ratio = 0.0;  // gamma1_length / sqrt(area)
  double bound = 0.0;  // sqrt(2 pi)
  double margin = 0.0;
};

IsoperimetricReport isoperimetric_report(const LabeledDomain& domain);

// Line with direction angle theta (normalized to [0, pi)) and signed offset
// along the normal (sin theta, -cos theta). For theta = pi/2 the offset is x.
class CutLine {
 public:
  CutLine(double angle_theta, double offset);

  double angle() const noexcept { return angle_; }
  double offset() const noexcept { return offset_; }
  Point normal() const noexcept { return normal_; }
  Point direction() const noexcept { return {-normal_.y, normal_.x}; }
  double signed_distance(Point p) const noexcept { return dot(normal_, p) - offset_; }
  Point reflect(Point p) const noexcept {
    return p - (2.0 * signed_distance(p)) * normal_;
  }

 private:
  double angle_;
  double offset_;
  Point normal_;
};

LabeledDomain reflect(const LabeledDomain& domain, const CutLine& line);

// Area of the part of the domain with signed_distance >= 0.
double area_on_positive_side(const LabeledDomain& domain, const CutLine& line);

// Offset that splits the domain into two halves of equal area (bisection).
CutLine equal_volume_cut(const LabeledDomain& domain, double theta);

enum class StepOutcome {
  kApplied,
  // The equal-volume cut misses the free boundary; the domain is unchanged.
  kCase2,
  // The reflected union is not a single polygon with one free chain.
  kUnsupported,
};

std::string_view to_string(StepOutcome outcome);

struct SymmetrizationStep {
  StepOutcome outcome;
  LabeledDomain domain;
  CutLine cut;
  double ratio_before;
  double ratio_after;
  // +1 if the half with signed_distance >= 0 was kept, -1 otherwise, 0 if untouched.
  int kept_side;
};

// One reflection step: cut by the equal-volume line at angle theta, keep the
// half with the smaller |Gamma_1 cap half| / |half|^{1/2} and glue it to its
// mirror image. Throws ValidationError if a half has zero area.
SymmetrizationStep symmetrization_step(const LabeledDomain& domain, double theta);

struct IterationOptions {
  int max_steps = 50;
  double angle = std::numbers::pi * (3.0 - std::sqrt(5.0));  // golden angle
  // Stop once an applied step lowers the ratio by less than this.
  double min_decrease = 1e-6;
};

struct IterationRecord {
  int step;
  double theta;
  double ratio;
  double area;
  // Length of the projection of the free chain onto the x-axis.
  double free_projection;
  StepOutcome outcome;
};

// Record 0 describes the input; record k the domain after step k with angle k*angle.
std::vector<IterationRecord> symmetrize_iterate(const LabeledDomain& domain,
                                                const IterationOptions& options = {});

double free_projection_length(const LabeledDomain& domain);

}  // namespace freebound::geometry
