#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsn/environment.hpp"
#include "wsn/grid.hpp"
#include "wsn/kernels.hpp"
#include "wsn/node.hpp"
#include "wsn/rng.hpp"
#include "wsn/tng.hpp"

namespace wsn {

enum class StrategyKind { kVoronoiOnly, kGaVoronoi };

std::string to_string(StrategyKind s);

/// Simulation parameters. Lengths are in region units.
struct SimConfig {
  int max_nodes = 40;
  double sensing_radius = 1.0;
  double comm_radius = 2.0;      // default 2 * sensing_radius
  double max_step = 0.25;        // per-step displacement cap, default sensing_radius / 4
  double min_separation = 0.1;   // default sensing_radius / 10
  int stall_window = 5;          // injection trigger window W (steps)
  double stall_threshold = 0.002;  // PAC gain over W below which a node is injected
  double pac_target = 0.9;
  double quiescence_eps = 0.05;  // max per-node displacement counted as "still"
  int quiescence_steps = 10;     // consecutive still steps required
  int step_cap = 5000;
  std::uint64_t seed = 1;
  StrategyKind strategy = StrategyKind::kVoronoiOnly;
  int grid_resolution = 200;
  double wall_margin = 0.01;
  /// Length scale applied to the dimensionless noise deviation when
  /// perturbing perceived neighbor positions: offsets have standard
  /// deviation sigma * noise_scale region units.
  double noise_scale = 6.0;
  /// Build adjacency from noise-perturbed positions instead of true ones.
  bool noisy_adjacency = false;
  /// Neighbor count at or above which a GA run uses the Voronoi move.
  int ga_neighbor_threshold = 4;
};

/// Throws ConfigError naming the offending field.
void validate(const SimConfig& cfg);

struct GaParams {
  int population = 12;
  int generations = 3;
  double mutation_radius = 0.5;  // default sensing_radius / 2
  int elite = 2;
  double movement_penalty = 0.1;  // fitness cost per unit distance moved
};

void validate(const GaParams& params);

/// Per-step application metrics of one run.
struct MetricsBundle {
  std::vector<double> pac;
  std::vector<double> cdt;
  std::vector<int> node_count;
  std::vector<int> injected;  // 1 when a node was injected at that step
  int steps_to_cutoff = -1;
  int steps_to_full_injection = -1;
};

enum class RunStatus { kConverged, kNoConvergence };

struct DeploymentResult {
  TemporalNetworkGraph tng;
  MetricsBundle metrics;
  RunStatus status = RunStatus::kConverged;
  /// Engine-side sum of per-node distance_travelled at the final step.
  double final_distance_sum = 0.0;
};

/// Per-node perceived neighbor positions for the current snapshot: the true
/// position of every adjacent node plus a Gaussian offset of deviation
/// sigma * noise_scale. Draws are taken in (observer, neighbor) order.
PerceivedSets perceive_neighbors(const Snapshot& snap, const Environment& env, const SimConfig& cfg,
                                 Rng& rng);

/// Point reached from `from` heading to `target`: at most max_step away and
/// clamped to free space.
Point bounded_move(Point from, Point target, const Environment& env, const SimConfig& cfg);

/// Applies per-node targets (nullopt holds position), shortening moves so no
/// pair ends closer than min_separation, then updates distance bookkeeping,
/// adjacency and t.
Snapshot apply_moves(const Snapshot& snap, std::span<const std::optional<Point>> targets,
                     const Environment& env, const SimConfig& cfg);

/// One Voronoi-only step: perceive, compute cells, move toward centroids.
Snapshot step_voronoi(const Snapshot& snap, const Environment& env, const SimConfig& cfg, Rng& rng);

/// Appends a node at the inlet (or on a small ring around it when occupied).
/// Throws std::logic_error when the snapshot already holds max_nodes nodes.
Snapshot inject_node(const Snapshot& snap, const Environment& env, const SimConfig& cfg);

/// Recomputes the adjacency of `snap` from positions (true or noisy per cfg).
void refresh_adjacency(Snapshot& snap, const Environment& env, const SimConfig& cfg, Rng& rng);

/// Full deployment: inject, step and record until the cutoff or the step cap.
DeploymentResult run_deployment(const Environment& env, const SimConfig& cfg,
                                const GaParams& params = {});

}  // namespace wsn
