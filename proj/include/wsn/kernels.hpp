#pragma once

// Data-parallel kernels used by the simulator and the analysis pipeline.
// Each kernel has an OpenMP version (wsn::kernels) and a plain serial
// version (wsn::reference) that tests compare against; results are identical
// bit for bit because every output element is written by exactly one
// iteration and no floating-point reduction order changes.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsn/environment.hpp"
#include "wsn/grid.hpp"
#include "wsn/node.hpp"

namespace wsn {

/// Perceived neighbor positions, one list per node.
using PerceivedSets = std::vector<std::vector<Point>>;

namespace reference {

/// Grid cells (free, center within the node's sensing radius, in line of
/// sight) covered by at least one node. Row-major, size nx * ny.
std::vector<std::uint8_t> coverage_mask(const RegionGrid& grid, std::span<const NodeState> nodes);

std::vector<CellRegion> voronoi_cells(std::span<const NodeState> nodes, const PerceivedSets& perceived,
                                      const Environment& env, double hx, double hy);

/// Pearson coefficients of every pair of length-w windows of `a` and `b`
/// whose starts are multiples of `stride`. Row-major, rows index `a`.
std::vector<std::optional<double>> correlation_windows(std::span<const double> a, std::span<const double> b,
                                                       int w, int stride);

}  // namespace reference

namespace kernels {

std::vector<std::uint8_t> coverage_mask(const RegionGrid& grid, std::span<const NodeState> nodes);

std::vector<CellRegion> voronoi_cells(std::span<const NodeState> nodes, const PerceivedSets& perceived,
                                      const Environment& env, double hx, double hy);

std::vector<std::optional<double>> correlation_windows(std::span<const double> a, std::span<const double> b,
                                                       int w, int stride);

/// Number of threads OpenMP will use (1 when built without OpenMP).
int max_threads();

}  // namespace kernels

}  // namespace wsn
