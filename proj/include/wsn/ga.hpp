#pragma once

#include <optional>
#include <span>

#include "wsn/deployment.hpp"

namespace wsn {

/// GA for sparse neighborhoods, Voronoi move once a node has at least
/// `threshold` neighbors.
Strategy select_strategy(int neighbor_count, int threshold = 4);

/// Estimated coverage value of placing the node at `candidate`: sensing area
/// not already covered by the node or its perceived neighbors, minus area
/// shared with the neighbors' sensing disks, minus movement_penalty times the
/// distance moved. Areas are counted on a lattice of spacing (2 hx, 2 hy)
/// anchored at the candidate, with disk membership ramped over one spacing.
double ga_fitness(Point candidate, const NodeState& node, std::span<const Point> perceived_neighbors,
                  const Environment& env, double hx, double hy, double movement_penalty);

/// Small generational GA over reachable positions (within max_step, straight
/// path in free space). The population is seeded with the Voronoi move (when
/// `centroid` is set) plus uniform samples; elites survive and the rest are
/// Gaussian mutations of elites. Returns the fittest candidate seen, with the
/// current position competing as the "stay" option. Ties go to the smallest
/// (x, y). A winner inside the reachable disk is pushed radially to its edge
/// when that does not lower the fitness.
Point ga_propose(const NodeState& node, std::span<const Point> perceived_neighbors,
                 std::optional<Point> centroid, const Environment& env, const SimConfig& cfg,
                 const GaParams& params, Rng& rng);

/// One GA + Voronoi step: each node picks its rule from its current degree.
/// The returned snapshot records the chosen rule per node.
Snapshot step_ga_voronoi(const Snapshot& snap, const Environment& env, const SimConfig& cfg,
                         const GaParams& params, Rng& rng);

}  // namespace wsn
