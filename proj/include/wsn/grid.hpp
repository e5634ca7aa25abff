#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/environment.hpp"
#include "wsn/geometry.hpp"
#include "wsn/node.hpp"

namespace wsn {

/// Fixed raster over the whole region. Cell (i, j) has its center at
/// ((i + 0.5) hx, (j + 0.5) hy). A cell is free when its center is.
class RegionGrid {
 public:
  RegionGrid(const Environment& env, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double cell_area() const { return hx_ * hy_; }

  Point center(int i, int j) const { return {(i + 0.5) * hx_, (j + 0.5) * hy_}; }
  bool is_free(int i, int j) const { return free_[static_cast<std::size_t>(j) * nx_ + i] != 0; }
  std::size_t free_count() const { return free_count_; }

  const Environment& environment() const { return *env_; }

 private:
  const Environment* env_;
  int nx_;
  int ny_;
  double hx_;
  double hy_;
  std::vector<std::uint8_t> free_;
  std::size_t free_count_ = 0;
};

/// A set of lattice samples anchored at a node: sample m sits at
/// anchor + (offsets[m].k * hx, offsets[m].l * hy). Anchoring the lattice on
/// the node keeps an unobstructed cell exactly symmetric about it.
struct CellRegion {
  struct Offset {
    int k;
    int l;
  };

  Point anchor;
  double hx = 0.0;
  double hy = 0.0;
  std::vector<Offset> offsets;

  bool empty() const { return offsets.empty(); }
  double area() const { return static_cast<double>(offsets.size()) * hx * hy; }
  Point sample(const Offset& o) const { return {anchor.x + o.k * hx, anchor.y + o.l * hy}; }
};

/// Range-limited Voronoi cell of `node`: lattice samples within its sensing
/// radius, in free space, in line of sight of the node, and no farther from
/// the node than from any perceived neighbor position.
CellRegion compute_voronoi_cell(const NodeState& node, std::span<const Point> perceived_neighbors,
                                const Environment& env, double hx, double hy);

/// Area centroid of the cell; nullopt for an empty (fully obstructed) cell.
std::optional<Point> cell_centroid(const CellRegion& cell);

}  // namespace wsn
