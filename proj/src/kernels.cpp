#include "wsn/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "wsn/measures.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wsn {
namespace {

struct Footprint {
  Point p;
  double r2;
  int i0, i1, j0, j1;  // inclusive cell index range of the sensing disk
  std::vector<int> near;
};

std::vector<Footprint> footprints(const RegionGrid& grid, std::span<const NodeState> nodes) {
  const Environment& env = grid.environment();
  std::vector<Footprint> out;
  out.reserve(nodes.size());
  for (const NodeState& n : nodes) {
    const double r = n.sensing_radius;
    Footprint f{n.position, r * r, 0, 0, 0, 0, env.obstacles_near(n.position, r)};
    f.i0 = std::max(0, static_cast<int>(std::floor((n.position.x - r) / grid.hx())));
    f.i1 = std::min(grid.nx() - 1, static_cast<int>(std::floor((n.position.x + r) / grid.hx())));
    f.j0 = std::max(0, static_cast<int>(std::floor((n.position.y - r) / grid.hy())));
    f.j1 = std::min(grid.ny() - 1, static_cast<int>(std::floor((n.position.y + r) / grid.hy())));
    out.push_back(std::move(f));
  }
  return out;
}

bool covers(const Footprint& f, Point c, const Environment& env) {
  if (norm2(c - f.p) > f.r2) return false;
  return line_of_sight(f.p, c, env, f.near);
}

void cover_row(const RegionGrid& grid, const std::vector<Footprint>& fps, int j, std::uint8_t* row) {
  const Environment& env = grid.environment();
  for (const Footprint& f : fps) {
    if (j < f.j0 || j > f.j1) continue;
    for (int i = f.i0; i <= f.i1; ++i) {
      if (row[i] || !grid.is_free(i, j)) continue;
      if (covers(f, grid.center(i, j), env)) row[i] = 1;
    }
  }
}

std::size_t window_count(std::size_t len, int w, int stride) {
  return len < static_cast<std::size_t>(w) ? 0 : (len - static_cast<std::size_t>(w)) / static_cast<std::size_t>(stride) + 1;
}

void correlation_row(std::span<const double> a, std::span<const double> b, int w, int stride, std::size_t r,
                     std::size_t cols, std::optional<double>* out) {
  const auto wa = a.subspan(r * static_cast<std::size_t>(stride), static_cast<std::size_t>(w));
  for (std::size_t c = 0; c < cols; ++c) {
    out[c] = pearson(wa, b.subspan(c * static_cast<std::size_t>(stride), static_cast<std::size_t>(w)));
  }
}

}  // namespace

namespace reference {

std::vector<std::uint8_t> coverage_mask(const RegionGrid& grid, std::span<const NodeState> nodes) {
  const auto fps = footprints(grid, nodes);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.nx()) * grid.ny(), 0);
  const Environment& env = grid.environment();
  for (const Footprint& f : fps) {
    for (int j = f.j0; j <= f.j1; ++j) {
      for (int i = f.i0; i <= f.i1; ++i) {
        auto& m = mask[static_cast<std::size_t>(j) * grid.nx() + i];
        if (m || !grid.is_free(i, j)) continue;
        if (covers(f, grid.center(i, j), env)) m = 1;
      }
    }
  }
  return mask;
}

std::vector<CellRegion> voronoi_cells(std::span<const NodeState> nodes, const PerceivedSets& perceived,
                                      const Environment& env, double hx, double hy) {
  std::vector<CellRegion> cells;
  cells.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    cells.push_back(compute_voronoi_cell(nodes[i], perceived[i], env, hx, hy));
  }
  return cells;
}

std::vector<std::optional<double>> correlation_windows(std::span<const double> a, std::span<const double> b,
                                                       int w, int stride) {
  const std::size_t rows = window_count(a.size(), w, stride);
  const std::size_t cols = window_count(b.size(), w, stride);
  std::vector<std::optional<double>> out(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) correlation_row(a, b, w, stride, r, cols, out.data() + r * cols);
  return out;
}

}  // namespace reference

namespace kernels {

std::vector<std::uint8_t> coverage_mask(const RegionGrid& grid, std::span<const NodeState> nodes) {
  const auto fps = footprints(grid, nodes);
  const int nx = grid.nx();
  const int ny = grid.ny();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(nx) * ny, 0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    cover_row(grid, fps, j, mask.data() + static_cast<std::size_t>(j) * nx);
  }
  return mask;
}

std::vector<CellRegion> voronoi_cells(std::span<const NodeState> nodes, const PerceivedSets& perceived,
                                      const Environment& env, double hx, double hy) {
  const int n = static_cast<int>(nodes.size());
  std::vector<CellRegion> cells(nodes.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    cells[i] = compute_voronoi_cell(nodes[i], perceived[i], env, hx, hy);
  }
  return cells;
}

std::vector<std::optional<double>> correlation_windows(std::span<const double> a, std::span<const double> b,
                                                       int w, int stride) {
  const std::size_t rows = window_count(a.size(), w, stride);
  const std::size_t cols = window_count(b.size(), w, stride);
  std::vector<std::optional<double>> out(rows * cols);
  const auto nrows = static_cast<long long>(rows);
#pragma omp parallel for schedule(static)
  for (long long r = 0; r < nrows; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    correlation_row(a, b, w, stride, ru, cols, out.data() + ru * cols);
  }
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels

}  // namespace wsn
