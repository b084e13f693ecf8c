#pragma once

// Cell-centered rasterization of a LabeledDomain onto a uniform grid.

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "freebound/geometry.hpp"

namespace freebound::raster {

using geometry::LabeledDomain;
using geometry::Point;

enum class FaceKind : std::uint8_t { kInterior, kFixed, kFree };

// Neighbor directions, in the order used by RasterGrid::faces.
enum Direction : int { kEast = 0, kWest = 1, kNorth = 2, kSouth = 3 };
inline constexpr std::array<int, 4> kDx{1, -1, 0, 0};
inline constexpr std::array<int, 4> kDy{0, 0, 1, -1};

struct BoundaryFace {
  int cell;  // index into RasterGrid::cells
  Direction direction;
  FaceKind kind;  // kFixed or kFree
  Point midpoint;
};

// Cells are stored in row-major order (j * nx + i). Only cells whose center
// lies inside the domain are active; they are numbered 0..cells.size()-1.
struct RasterGrid {
  int nx = 0;
  int ny = 0;
  double h = 0.0;
  Point origin;  // lower-left corner of cell (0, 0)
  std::vector<std::uint8_t> mask;
  std::vector<int> index;                    // active number per grid cell, -1 outside
  std::vector<std::array<int, 2>> cells;     // (i, j) per active cell
  std::vector<std::array<FaceKind, 4>> faces;  // per active cell
  std::vector<BoundaryFace> boundary_faces;
  std::shared_ptr<const LabeledDomain> domain;

  std::size_t size() const noexcept { return cells.size(); }
  double cell_area() const noexcept { return h * h; }
  double mask_area() const noexcept { return static_cast<double>(cells.size()) * h * h; }
  Point center(int i, int j) const noexcept {
    return {origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
  }
  Point center(std::size_t active) const noexcept {
    return center(cells[active][0], cells[active][1]);
  }
  // Active index of grid cell (i, j), or -1 when outside the grid or mask.
  int active(int i, int j) const noexcept {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
    return index[static_cast<std::size_t>(j) * nx + i];
  }
  // Active index of the neighbor across a face, or -1.
  int neighbor(std::size_t active_cell, int direction) const noexcept {
    return active(cells[active_cell][0] + kDx[direction], cells[active_cell][1] + kDy[direction]);
  }
};

// Throws ValidationError if h is not positive, the bounding box spans fewer
// than 8 cells, or no cell center lies inside the domain.
std::shared_ptr<const RasterGrid> rasterize(const LabeledDomain& domain, double h);

// L1 distance between the mask indicator and the domain indicator, i.e. the
// area of their symmetric difference.
double coverage_error(const RasterGrid& grid);

}  // namespace freebound::raster
