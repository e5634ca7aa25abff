#include "wsn/grid.hpp"

#include <cmath>

#include "wsn/errors.hpp"

namespace wsn {

RegionGrid::RegionGrid(const Environment& env, int nx, int ny)
    : env_(&env), nx_(nx), ny_(ny), hx_(env.width() / nx), hy_(env.height() / ny) {
  if (nx < 1 || ny < 1) throw ConfigError("grid resolution must be >= 1");
  free_.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny_; ++j) {
    for (int i = 0; i < nx_; ++i) {
      const bool f = env.in_free_space(center(i, j));
      free_[static_cast<std::size_t>(j) * nx_ + i] = f ? 1 : 0;
      free_count_ += f ? 1 : 0;
    }
  }
}

CellRegion compute_voronoi_cell(const NodeState& node, std::span<const Point> perceived_neighbors,
                                const Environment& env, double hx, double hy) {
  CellRegion cell{node.position, hx, hy, {}};
  const double r = node.sensing_radius;
  const double r2 = r * r;
  const Point p = node.position;
  const std::vector<int> near = env.obstacles_near(p, r);
  const auto obstacles = env.obstacles();

  std::vector<Point> rel;
  std::vector<double> half_len2;
  rel.reserve(perceived_neighbors.size());
  for (Point q : perceived_neighbors) {
    const Point u = q - p;
    // Bisector half-plane: 2 v.u <= |u|^2. A neighbor farther than 2r cannot cut the disk.
    if (norm2(u) > 4.0 * r2) continue;
    rel.push_back(u);
    half_len2.push_back(norm2(u));
  }

  const int kmax = static_cast<int>(std::floor(r / hx));
  const int lmax = static_cast<int>(std::floor(r / hy));
  for (int l = -lmax; l <= lmax; ++l) {
    const double vy = l * hy;
    for (int k = -kmax; k <= kmax; ++k) {
      const double vx = k * hx;
      if (vx * vx + vy * vy > r2) continue;
      const Point x{p.x + vx, p.y + vy};
      if (!env.in_bounds(x)) continue;
      bool ok = true;
      for (std::size_t m = 0; m < rel.size() && ok; ++m) {
        ok = 2.0 * (vx * rel[m].x + vy * rel[m].y) <= half_len2[m];
      }
      for (int oi : near) {
        if (!ok) break;
        const Obstacle& o = obstacles[static_cast<std::size_t>(oi)];
        ok = !in_interior(o, x) && !segment_hits(o, p, x);
      }
      if (ok) cell.offsets.push_back({k, l});
    }
  }
  return cell;
}

std::optional<Point> cell_centroid(const CellRegion& cell) {
  if (cell.empty()) return std::nullopt;
  long long sk = 0;
  long long sl = 0;
  for (const auto& o : cell.offsets) {
    sk += o.k;
    sl += o.l;
  }
  const double n = static_cast<double>(cell.offsets.size());
  return Point{cell.anchor.x + cell.hx * (static_cast<double>(sk) / n),
               cell.anchor.y + cell.hy * (static_cast<double>(sl) / n)};
}

}  // namespace wsn
