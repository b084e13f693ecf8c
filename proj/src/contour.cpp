#include "freebound/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace freebound::contour {

namespace {

using geometry::Point;

struct DisjointSet {
  std::vector<int> parent;

  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LevelStats level_stats(const field::ScalarField& f, double t, double p) {
  const auto& grid = f.grid();
  const int w = grid.nx + 2;  // node grid padded by one ghost ring
  const int hgt = grid.ny + 2;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> node(static_cast<std::size_t>(w) * hgt, nan);
  const auto at = [&](int i, int j) -> double& { return node[static_cast<std::size_t>(j + 1) * w + (i + 1)]; };

  std::vector<int> ghost_count(node.size(), 0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [i, j] = grid.cells[k];
    at(i, j) = f[k];
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto [i, j] = grid.cells[k];
    for (int d = 0; d < 4; ++d) {
      if (grid.faces[k][d] == raster::FaceKind::kInterior) continue;
      const int gi = i + raster::kDx[d], gj = j + raster::kDy[d];
      const std::size_t slot = static_cast<std::size_t>(gj + 1) * w + (gi + 1);
      if (ghost_count[slot] == 0) node[slot] = 0.0;
      node[slot] += f.ghost(k, d);
      ++ghost_count[slot];
    }
  }
  for (std::size_t s = 0; s < node.size(); ++s) {
    if (ghost_count[s] > 1) node[s] /= ghost_count[s];
  }

  const double h = grid.h;
  const double g = 0.5 / std::sqrt(3.0);
  LevelStats stats;
  stats.t = t;
  DisjointSet components;
  std::unordered_map<long long, int> edge_id;
  std::vector<char> used;
  const auto key_id = [&](long long key) {
    const auto [it, inserted] = edge_id.try_emplace(key, 0);
    if (inserted) {
      it->second = components.add();
      used.push_back(0);
    }
    return it->second;
  };

  for (int j = -1; j < grid.ny; ++j) {
    for (int i = -1; i < grid.nx; ++i) {
      const double v00 = at(i, j), v10 = at(i + 1, j), v01 = at(i, j + 1), v11 = at(i + 1, j + 1);
      if (std::isnan(v00) || std::isnan(v10) || std::isnan(v01) || std::isnan(v11)) continue;
      const bool b00 = v00 > t, b10 = v10 > t, b01 = v01 > t, b11 = v11 > t;
      if (b00 == b10 && b00 == b01 && b00 == b11) continue;
      const bool owners[2][2] = {{grid.active(i, j) >= 0, grid.active(i, j + 1) >= 0},
                                 {grid.active(i + 1, j) >= 0, grid.active(i + 1, j + 1) >= 0}};

      // Edges: 0 bottom, 1 right, 2 top, 3 left; crossing points in local units.
      const auto lerp = [&](double a, double b) { return (t - a) / (b - a); };
      Point cross[4];
      bool has[4] = {b00 != b10, b10 != b11, b01 != b11, b00 != b01};
      if (has[0]) cross[0] = {lerp(v00, v10), 0.0};
      if (has[1]) cross[1] = {1.0, lerp(v10, v11)};
      if (has[2]) cross[2] = {lerp(v01, v11), 1.0};
      if (has[3]) cross[3] = {0.0, lerp(v00, v01)};
      const long long n00 = static_cast<long long>(j + 1) * w + (i + 1);
      const long long keys[4] = {2 * n00, 2 * (n00 + 1) + 1, 2 * (n00 + w), 2 * n00 + 1};

      int pairs[2][2];
      int npairs = 0;
      const int count = has[0] + has[1] + has[2] + has[3];
      if (count == 2) {
        int a = -1, b = -1;
        for (int e = 0; e < 4; ++e) {
          if (!has[e]) continue;
          (a < 0 ? a : b) = e;
        }
        pairs[npairs][0] = a;
        pairs[npairs++][1] = b;
      } else {
        const bool center_high = 0.25 * (v00 + v10 + v01 + v11) > t;
        // Either the corners 00/11 or the corners 10/01 are cut off.
        const bool cut_10_01 = (b00 == center_high);
        if (cut_10_01) {
          pairs[0][0] = 0, pairs[0][1] = 1;
          pairs[1][0] = 2, pairs[1][1] = 3;
        } else {
          pairs[0][0] = 3, pairs[0][1] = 0;
          pairs[1][0] = 1, pairs[1][1] = 2;
        }
        npairs = 2;
      }

      for (int s = 0; s < npairs; ++s) {
        const Point a = cross[pairs[s][0]], b = cross[pairs[s][1]];
        // Split at the mid-lines so each piece lies in one cell's quadrant.
        double cuts[4] = {0.0, 1.0, 0.0, 0.0};
        int ncuts = 2;
        for (int axis = 0; axis < 2; ++axis) {
          const double pa = axis == 0 ? a.x : a.y, pb = axis == 0 ? b.x : b.y;
          if ((pa - 0.5) * (pb - 0.5) < 0.0) cuts[ncuts++] = (0.5 - pa) / (pb - pa);
        }
        std::sort(cuts, cuts + ncuts);
        bool kept = false;
        for (int c = 0; c + 1 < ncuts; ++c) {
          const double u0 = cuts[c], u1 = cuts[c + 1];
          if (u1 - u0 <= 0.0) continue;
          const Point q0 = a + u0 * (b - a), q1 = a + u1 * (b - a);
          const Point mid = 0.5 * (q0 + q1);
          if (!owners[mid.x >= 0.5][mid.y >= 0.5]) continue;
          kept = true;
          const double len = h * geometry::distance(q0, q1);
          stats.surface += len;
          for (double gp : {0.5 - g, 0.5 + g}) {
            const Point q = q0 + gp * (q1 - q0);
            const double gx = ((v10 - v00) * (1.0 - q.y) + (v11 - v01) * q.y) / h;
            const double gy = ((v01 - v00) * (1.0 - q.x) + (v11 - v10) * q.x) / h;
            const double grad = std::hypot(gx, gy);
            if (grad < 1e-8) {
              stats.reliable = false;
              continue;
            }
            stats.coarea_integral += 0.5 * len / grad;
            stats.flux_p += 0.5 * len * std::pow(grad, p - 1.0);
          }
        }
        if (kept) {
          const int ia = key_id(keys[pairs[s][0]]);
          const int ib = key_id(keys[pairs[s][1]]);
          used[ia] = used[ib] = 1;
          components.unite(ia, ib);
        }
      }
    }
  }
  std::vector<char> root_seen(components.parent.size(), 0);
  for (std::size_t k = 0; k < used.size(); ++k) {
    if (!used[k]) continue;
    const int r = components.find(static_cast<int>(k));
    if (!root_seen[r]) {
      root_seen[r] = 1;
      ++stats.components;
    }
  }
  return stats;
}

}  // namespace freebound::contour
