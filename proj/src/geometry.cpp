#include "freebound/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "freebound/constants.hpp"
#include "freebound/errors.hpp"

namespace freebound::geometry {

double distance_to_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

std::string_view to_string(EdgeLabel label) {
  return label == EdgeLabel::kFixed ? "fixed" : "free";
}

EdgeLabel parse_label(std::string_view text) {
  if (text == "fixed") return EdgeLabel::kFixed;
  if (text == "free") return EdgeLabel::kFree;
  throw ValidationError("unknown edge label '" + std::string(text) + "'");
}

double signed_area(const std::vector<Point>& ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(ring[i], ring[(i + 1) % n]);
  }
  return 0.5 * twice;
}

namespace {

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(q1, p1, p2)) return true;
  if (o2 == 0 && on_segment(q2, p1, p2)) return true;
  if (o3 == 0 && on_segment(p1, q1, q2)) return true;
  if (o4 == 0 && on_segment(p2, q1, q2)) return true;
  return false;
}

Ring reversed(const Ring& ring) {
  const std::size_t n = ring.vertices.size();
  Ring out;
  out.vertices.assign(ring.vertices.rbegin(), ring.vertices.rend());
  out.labels.resize(n);
  // New edge k runs v[n-1-k] -> v[n-2-k], i.e. old edge n-2-k reversed.
  for (std::size_t k = 0; k < n; ++k) {
    out.labels[k] = ring.labels[(2 * n - 2 - k) % n];
  }
  return out;
}

void validate_ring(const Ring& ring, const char* what) {
  if (ring.vertices.size() < 3) {
    throw ValidationError(std::string(what) + " ring needs at least 3 vertices");
  }
  if (ring.labels.size() != ring.vertices.size()) {
    throw ValidationError(std::string(what) + " ring: label count " +
                          std::to_string(ring.labels.size()) + " != vertex count " +
                          std::to_string(ring.vertices.size()));
  }
  for (const auto& v : ring.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw ValidationError(std::string(what) + " ring has a non-finite vertex");
    }
  }
  const std::size_t n = ring.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ring.vertices[i] == ring.vertices[(i + 1) % n]) {
      throw ValidationError(std::string(what) + " ring has a zero-length edge");
    }
  }
}

struct IndexedEdge {
  std::size_t ring;
  std::size_t index;
  std::size_t ring_size;
  Point a;
  Point b;
};

void require_simple(const std::vector<IndexedEdge>& edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const double min_x = std::min(e.a.x, e.b.x), max_x = std::max(e.a.x, e.b.x);
    const double min_y = std::min(e.a.y, e.b.y), max_y = std::max(e.a.y, e.b.y);
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& f = edges[j];
      if (std::max(f.a.x, f.b.x) < min_x || std::min(f.a.x, f.b.x) > max_x ||
          std::max(f.a.y, f.b.y) < min_y || std::min(f.a.y, f.b.y) > max_y) {
        continue;
      }
      if (e.ring == f.ring) {
        const std::size_t n = e.ring_size;
        const bool next = (e.index + 1) % n == f.index;
        const bool prev = (f.index + 1) % n == e.index;
        if (next || prev) {
          // Adjacent edges share one vertex; only a backtracking overlap is invalid.
          const IndexedEdge& first = next ? e : f;
          const IndexedEdge& second = next ? f : e;
          const Point u = first.b - first.a;
          const Point w = second.b - second.a;
          if (cross(u, w) == 0.0 && dot(u, w) < 0.0) {
            throw ValidationError("polygon folds back on itself");
          }
          if (next && prev) {
            throw ValidationError("ring with two edges");
          }
          continue;
        }
      }
      if (segments_intersect(e.a, e.b, f.a, f.b)) {
        throw ValidationError("polygon boundary self-intersects");
      }
    }
  }
}

bool ring_contains(const std::vector<Point>& ring, Point p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = ring[j], b = ring[i];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

// Groups of consecutive free edges in a ring, as (start index, edge count).
std::vector<std::pair<std::size_t, std::size_t>> free_groups(const Ring& ring) {
  const std::size_t n = ring.labels.size();
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  const auto is_free = [&](std::size_t i) { return ring.labels[i % n] == EdgeLabel::kFree; };
  if (std::all_of(ring.labels.begin(), ring.labels.end(),
                  [](EdgeLabel l) { return l == EdgeLabel::kFree; })) {
    groups.emplace_back(0, n);
    return groups;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_free(i) && !is_free(i + n - 1)) {
      std::size_t len = 0;
      while (is_free(i + len)) ++len;
      groups.emplace_back(i, len);
    }
  }
  return groups;
}

}  // namespace

LabeledDomain::LabeledDomain(Ring outer, std::vector<Ring> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
  validate_ring(outer_, "outer");
  for (const auto& hole : holes_) validate_ring(hole, "hole");

  if (signed_area(outer_.vertices) < 0.0) outer_ = reversed(outer_);
  for (auto& hole : holes_) {
    if (signed_area(hole.vertices) > 0.0) hole = reversed(hole);
  }

  std::vector<IndexedEdge> indexed;
  const auto add_ring = [&](const Ring& ring, std::size_t r) {
    const std::size_t n = ring.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = ring.vertices[i], b = ring.vertices[(i + 1) % n];
      indexed.push_back({r, i, n, a, b});
      edges_.push_back({a, b, ring.labels[i]});
    }
  };
  add_ring(outer_, 0);
  for (std::size_t h = 0; h < holes_.size(); ++h) add_ring(holes_[h], h + 1);
  require_simple(indexed);

  for (std::size_t h = 0; h < holes_.size(); ++h) {
    if (!ring_contains(outer_.vertices, holes_[h].vertices.front())) {
      throw ValidationError("hole " + std::to_string(h) + " lies outside the outer ring");
    }
    for (std::size_t g = 0; g < holes_.size(); ++g) {
      if (g != h && ring_contains(holes_[g].vertices, holes_[h].vertices.front())) {
        throw ValidationError("nested holes are not supported");
      }
    }
  }

  bounds_ = {outer_.vertices.front(), outer_.vertices.front()};
  for (const auto& v : outer_.vertices) {
    bounds_.min.x = std::min(bounds_.min.x, v.x);
    bounds_.min.y = std::min(bounds_.min.y, v.y);
    bounds_.max.x = std::max(bounds_.max.x, v.x);
    bounds_.max.y = std::max(bounds_.max.y, v.y);
  }

  if (!(area(*this) > 0.0)) throw ValidationError("domain has non-positive area");

  // The free boundary must be a single chain (possibly a closed ring).
  const Ring* chain_ring = nullptr;
  std::pair<std::size_t, std::size_t> chain{0, 0};
  std::size_t group_count = 0;
  const auto scan = [&](const Ring& ring) {
    for (const auto& g : free_groups(ring)) {
      ++group_count;
      chain_ring = &ring;
      chain = g;
    }
  };
  scan(outer_);
  for (const auto& hole : holes_) scan(hole);
  if (group_count > 1) {
    throw ValidationError("free boundary must form one connected chain, found " +
                          std::to_string(group_count));
  }
  if (chain_ring != nullptr) {
    const std::size_t n = chain_ring->vertices.size();
    free_chain_closed_ = chain.second == n;
    for (std::size_t k = 0; k <= chain.second; ++k) {
      free_chain_.push_back(chain_ring->vertices[(chain.first + k) % n]);
    }
  }
}

bool LabeledDomain::contains(Point p) const {
  bool inside = false;
  for (const auto& e : edges_) {
    if ((e.a.y > p.y) != (e.b.y > p.y)) {
      const double x = e.a.x + (p.y - e.a.y) * (e.b.x - e.a.x) / (e.b.y - e.a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

double LabeledDomain::distance_to_boundary(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) best = std::min(best, distance_to_segment(p, e.a, e.b));
  return best;
}

double LabeledDomain::distance_to_boundary(Point p, EdgeLabel label) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : edges_) {
    if (e.label == label) best = std::min(best, distance_to_segment(p, e.a, e.b));
  }
  return best;
}

EdgeLabel LabeledDomain::nearest_label(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  EdgeLabel label = EdgeLabel::kFixed;
  for (const auto& e : edges_) {
    const double d = distance_to_segment(p, e.a, e.b);
    if (d < best) {
      best = d;
      label = e.label;
    }
  }
  return label;
}

double LabeledDomain::diameter() const { return std::hypot(bounds_.width(), bounds_.height()); }

double area(const LabeledDomain& domain) {
  double total = signed_area(domain.outer().vertices);
  for (const auto& hole : domain.holes()) total += signed_area(hole.vertices);
  return total;
}

double boundary_length(const LabeledDomain& domain, EdgeLabel label) {
  double total = 0.0;
  for (const auto& e : domain.edges()) {
    if (e.label == label) total += e.length();
  }
  return total;
}

ConcavityResult is_concave_free_boundary(const LabeledDomain& domain, int samples) {
  if (samples < 2) throw ValidationError("concavity check needs at least 2 samples");
  ConcavityResult result;
  if (!domain.has_free_boundary()) {
    result.vacuous = true;
    return result;
  }
  const auto& chain = domain.free_chain();
  std::vector<double> arc(chain.size(), 0.0);
  for (std::size_t i = 1; i < chain.size(); ++i) arc[i] = arc[i - 1] + distance(chain[i - 1], chain[i]);
  const double total = arc.back();

  const auto point_at = [&](double s) {
    const auto it = std::upper_bound(arc.begin(), arc.end(), s);
    std::size_t i = it == arc.begin() ? 0 : static_cast<std::size_t>(it - arc.begin()) - 1;
    if (i + 1 >= chain.size()) return chain.back();
    const double seg = arc[i + 1] - arc[i];
    const double t = seg > 0.0 ? (s - arc[i]) / seg : 0.0;
    return chain[i] + t * (chain[i + 1] - chain[i]);
  };

  std::vector<Point> pts;
  const int divisions = domain.free_chain_closed() ? samples : samples - 1;
  for (int k = 0; k < samples; ++k) pts.push_back(point_at(total * k / divisions));

  const double eps = 1e-9 * domain.diameter();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      for (double t : {0.25, 0.5, 0.75}) {
        const Point q = pts[i] + t * (pts[j] - pts[i]);
        if (domain.contains(q) && domain.distance_to_boundary(q) > eps) {
          result.concave = false;
          result.witness = std::make_pair(pts[i], pts[j]);
          return result;
        }
      }
    }
  }
  return result;
}

IsoperimetricReport isoperimetric_report(const LabeledDomain& domain) {
  IsoperimetricReport report;
  report.gamma1_length = boundary_length(domain, EdgeLabel::kFixed);
  report.area = area(domain);
  report.ratio = report.gamma1_length / std::sqrt(report.area);
  report.bound = constants::isoperimetric_constants(constants::Dimension(2)).free;
  report.margin = report.ratio - report.bound;
  return report;
}

CutLine::CutLine(double angle_theta, double offset) : offset_(offset) {
  double a = std::fmod(angle_theta, std::numbers::pi);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a = 0.0;
  angle_ = a;
  normal_ = {std::sin(a), -std::cos(a)};
}

LabeledDomain reflect(const LabeledDomain& domain, const CutLine& line) {
  const auto mirror = [&](const Ring& ring) {
    Ring out = ring;
    for (auto& v : out.vertices) v = line.reflect(v);
    return out;
  };
  std::vector<Ring> holes;
  for (const auto& hole : domain.holes()) holes.push_back(mirror(hole));
  return LabeledDomain(mirror(domain.outer()), std::move(holes));
}

namespace {

enum class ClipLabel : std::uint8_t { kFixed, kFree, kCut };

ClipLabel clip_label(EdgeLabel l) {
  return l == EdgeLabel::kFixed ? ClipLabel::kFixed : ClipLabel::kFree;
}

struct ClipVertex {
  Point p;
  bool on_line;
  ClipLabel out;  // label of the edge leaving this vertex
};

// Sutherland-Hodgman clip of one ring against {side * signed_distance >= 0}.
// Edges running along the cut line are tagged kCut.
std::vector<ClipVertex> clip_ring(const Ring& ring, const CutLine& line, int side,
                                  double merge_eps) {
  struct Emitted {
    Point p;
    bool on_line;
    ClipLabel incoming;
  };
  std::vector<Emitted> emitted;
  const auto emit = [&](Point p, bool on_line, ClipLabel incoming) {
    if (!emitted.empty() && distance(emitted.back().p, p) <= merge_eps) {
      emitted.back().on_line = emitted.back().on_line || on_line;
      return;
    }
    emitted.push_back({p, on_line, incoming});
  };
  const std::size_t n = ring.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point cur = ring.vertices[i];
    const Point nxt = ring.vertices[(i + 1) % n];
    const ClipLabel label = clip_label(ring.labels[i]);
    const double dc = side * line.signed_distance(cur);
    const double dn = side * line.signed_distance(nxt);
    const bool in_c = dc >= 0.0;
    const bool in_n = dn >= 0.0;
    if (in_c && in_n) {
      emit(nxt, dn == 0.0, label);
    } else if (in_c) {
      const double t = dc / (dc - dn);
      emit(cur + t * (nxt - cur), true, label);
    } else if (in_n) {
      const double t = dc / (dc - dn);
      emit(cur + t * (nxt - cur), true, ClipLabel::kCut);
      emit(nxt, dn == 0.0, label);
    }
  }
  while (emitted.size() > 1 && distance(emitted.back().p, emitted.front().p) <= merge_eps) {
    emitted.front().on_line = emitted.front().on_line || emitted.back().on_line;
    emitted.front().incoming = emitted.back().incoming;
    emitted.pop_back();
  }
  std::vector<ClipVertex> out;
  if (emitted.size() < 3) return out;
  const std::size_t m = emitted.size();
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    out.push_back({emitted[k].p, emitted[k].on_line, emitted[(k + 1) % m].incoming});
  }
  return out;
}

double clipped_area(const std::vector<ClipVertex>& ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    twice += cross(ring[i].p, ring[(i + 1) % ring.size()].p);
  }
  return 0.5 * twice;
}

struct Half {
  std::vector<std::vector<ClipVertex>> rings;
  double area = 0.0;
  double fixed_length = 0.0;
};

bool is_cut_edge(const std::vector<ClipVertex>& ring, std::size_t k) {
  const auto& a = ring[k];
  const auto& b = ring[(k + 1) % ring.size()];
  return a.out == ClipLabel::kCut || (a.on_line && b.on_line);
}

Half clip_domain(const LabeledDomain& domain, const CutLine& line, int side) {
  const double eps = 1e-13 * domain.diameter();
  Half half;
  const auto add = [&](const Ring& ring) {
    auto clipped = clip_ring(ring, line, side, eps);
    if (clipped.empty()) return;
    half.area += clipped_area(clipped);
    for (std::size_t k = 0; k < clipped.size(); ++k) {
      if (clipped[k].out == ClipLabel::kFixed && !is_cut_edge(clipped, k)) {
        half.fixed_length += distance(clipped[k].p, clipped[(k + 1) % clipped.size()].p);
      }
    }
    half.rings.push_back(std::move(clipped));
  };
  add(domain.outer());
  for (const auto& hole : domain.holes()) add(hole);
  return half;
}

EdgeLabel to_edge_label(ClipLabel l) {
  return l == ClipLabel::kFree ? EdgeLabel::kFree : EdgeLabel::kFixed;
}

// Drops near-duplicate vertices and interior vertices of straight runs that
// carry the same label on both sides.
Ring simplify(Ring ring, double eps) {
  bool changed = true;
  while (changed && ring.vertices.size() > 3) {
    changed = false;
    const std::size_t n = ring.vertices.size();
    for (std::size_t k = 0; k < n && ring.vertices.size() > 3; ++k) {
      const std::size_t m = ring.vertices.size();
      const std::size_t i = k % m;
      const std::size_t prev = (i + m - 1) % m;
      const std::size_t next = (i + 1) % m;
      const Point a = ring.vertices[prev], v = ring.vertices[i], b = ring.vertices[next];
      const Point u = v - a, w = b - v;
      const bool tiny = norm(w) <= eps;
      const bool straight = std::abs(cross(u, w)) <= 1e-12 * norm(u) * norm(w) &&
                            dot(u, w) > 0.0 && ring.labels[prev] == ring.labels[i];
      if (tiny) {
        // Merge v and b: the edge leaving v takes the label of the edge leaving b.
        ring.labels[i] = ring.labels[next];
        ring.vertices.erase(ring.vertices.begin() + static_cast<std::ptrdiff_t>(next));
        ring.labels.erase(ring.labels.begin() + static_cast<std::ptrdiff_t>(next));
        changed = true;
      } else if (straight) {
        ring.vertices.erase(ring.vertices.begin() + static_cast<std::ptrdiff_t>(i));
        ring.labels.erase(ring.labels.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      }
    }
  }
  return ring;
}

// Glues a clipped half to its mirror image. Each boundary run between two
// touches of the cut line closes up with its reflection into one ring.
std::vector<Ring> glue_with_mirror(const Half& half, const CutLine& line) {
  std::vector<Ring> rings;
  for (const auto& clipped : half.rings) {
    const std::size_t m = clipped.size();
    std::vector<std::size_t> touches;
    for (std::size_t k = 0; k < m; ++k) {
      if (clipped[k].on_line) touches.push_back(k);
    }
    if (touches.empty()) {
      Ring kept;
      for (const auto& v : clipped) {
        kept.vertices.push_back(v.p);
        kept.labels.push_back(to_edge_label(v.out));
      }
      Ring mirrored = kept;
      for (auto& v : mirrored.vertices) v = line.reflect(v);
      // Reflection flips orientation; restore it so holes stay holes.
      mirrored = reversed(mirrored);
      rings.push_back(std::move(kept));
      rings.push_back(std::move(mirrored));
      continue;
    }
    for (std::size_t start : touches) {
      if (is_cut_edge(clipped, start)) continue;
      std::vector<Point> path{clipped[start].p};
      std::vector<EdgeLabel> labels;
      std::size_t k = start;
      while (true) {
        labels.push_back(to_edge_label(clipped[k].out));
        k = (k + 1) % m;
        path.push_back(clipped[k].p);
        if (clipped[k].on_line) break;
      }
      if (path.size() < 3) continue;
      Ring ring;
      ring.vertices = path;
      ring.labels = labels;
      for (std::size_t j = path.size() - 2; j >= 1; --j) {
        ring.vertices.push_back(line.reflect(path[j]));
      }
      for (std::size_t j = labels.size(); j-- > 0;) ring.labels.push_back(labels[j]);
      rings.push_back(std::move(ring));
    }
  }
  return rings;
}

bool cut_meets_free_boundary(const LabeledDomain& domain, const CutLine& line) {
  for (const auto& e : domain.edges()) {
    if (e.label != EdgeLabel::kFree) continue;
    const double da = line.signed_distance(e.a);
    const double db = line.signed_distance(e.b);
    if ((da <= 0.0 && db >= 0.0) || (da >= 0.0 && db <= 0.0)) return true;
  }
  return false;
}

double fixed_ratio(const LabeledDomain& domain) {
  return boundary_length(domain, EdgeLabel::kFixed) / std::sqrt(area(domain));
}

}  // namespace

double area_on_positive_side(const LabeledDomain& domain, const CutLine& line) {
  return clip_domain(domain, line, +1).area;
}

CutLine equal_volume_cut(const LabeledDomain& domain, double theta) {
  const CutLine probe(theta, 0.0);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : domain.outer().vertices) {
    const double s = dot(probe.normal(), v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const double target = 0.5 * area(domain);
  // Area on the positive side decreases monotonically in the offset.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (area_on_positive_side(domain, CutLine(theta, mid)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return CutLine(theta, 0.5 * (lo + hi));
}

std::string_view to_string(StepOutcome outcome) {
  switch (outcome) {
    case StepOutcome::kApplied:
      return "applied";
    case StepOutcome::kCase2:
      return "case-2";
    case StepOutcome::kUnsupported:
      return "unsupported";
  }
  return "unknown";
}

SymmetrizationStep symmetrization_step(const LabeledDomain& domain, double theta) {
  const CutLine cut = equal_volume_cut(domain, theta);
  const double before = fixed_ratio(domain);
  if (!cut_meets_free_boundary(domain, cut)) {
    return {StepOutcome::kCase2, domain, cut, before, before, 0};
  }
  const double total = area(domain);
  const Half positive = clip_domain(domain, cut, +1);
  const Half negative = clip_domain(domain, cut, -1);
  if (positive.area <= 1e-12 * total || negative.area <= 1e-12 * total) {
    throw ValidationError("equal-volume cut produced a half with zero area");
  }
  const double ratio_pos = positive.fixed_length / std::sqrt(positive.area);
  const double ratio_neg = negative.fixed_length / std::sqrt(negative.area);
  const int side = ratio_pos <= ratio_neg ? +1 : -1;
  const Half& kept = side > 0 ? positive : negative;

  const double eps = 1e-12 * domain.diameter();
  std::vector<Ring> rings = glue_with_mirror(kept, cut);
  std::vector<Ring> outers;
  std::vector<Ring> holes;
  for (auto& ring : rings) {
    ring = simplify(std::move(ring), eps);
    if (ring.vertices.size() < 3) continue;
    (signed_area(ring.vertices) > 0.0 ? outers : holes).push_back(std::move(ring));
  }
  if (outers.size() != 1) {
    return {StepOutcome::kUnsupported, domain, cut, before, before, 0};
  }
  try {
    LabeledDomain glued(std::move(outers.front()), std::move(holes));
    const double after = fixed_ratio(glued);
    return {StepOutcome::kApplied, std::move(glued), cut, before, after, side};
  } catch (const ValidationError&) {
    return {StepOutcome::kUnsupported, domain, cut, before, before, 0};
  }
}

double free_projection_length(const LabeledDomain& domain) {
  const auto& chain = domain.free_chain();
  if (chain.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(chain.begin(), chain.end(),
                                            [](Point a, Point b) { return a.x < b.x; });
  return hi->x - lo->x;
}

std::vector<IterationRecord> symmetrize_iterate(const LabeledDomain& domain,
                                                const IterationOptions& options) {
  std::vector<IterationRecord> records;
  LabeledDomain current = domain;
  double ratio = fixed_ratio(current);
  records.push_back({0, 0.0, ratio, area(current), free_projection_length(current),
                     StepOutcome::kApplied});
  for (int step = 1; step <= options.max_steps; ++step) {
    const double theta = std::fmod(step * options.angle, std::numbers::pi);
    SymmetrizationStep result = symmetrization_step(current, theta);
    const double previous = ratio;
    if (result.outcome == StepOutcome::kApplied) {
      current = std::move(result.domain);
      ratio = result.ratio_after;
    }
    records.push_back({step, theta, ratio, area(current), free_projection_length(current),
                       result.outcome});
    if (result.outcome == StepOutcome::kApplied && previous - ratio < options.min_decrease) {
      break;
    }
  }
  return records;
}

}  // namespace freebound::geometry
