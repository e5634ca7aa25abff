#include "wsn/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wsn/errors.hpp"
#include "wsn/ga.hpp"
#include "wsn/metrics.hpp"

namespace wsn {

std::string to_string(StrategyKind s) {
  return s == StrategyKind::kGaVoronoi ? "ga_voronoi" : "voronoi_only";
}

void validate(const SimConfig& c) {
  auto require = [](bool ok, const char* field, const char* rule) {
    if (!ok) throw ConfigError(std::string(field) + ": " + rule);
  };
  require(c.max_nodes >= 1, "max_nodes", "must be >= 1");
  require(c.sensing_radius > 0.0, "sensing_radius", "must be > 0");
  require(c.comm_radius > 0.0, "comm_radius", "must be > 0");
  require(c.max_step > 0.0, "max_step", "must be > 0");
  require(c.min_separation >= 0.0, "min_separation", "must be >= 0");
  require(c.stall_window >= 1, "stall_window", "must be >= 1");
  require(c.stall_threshold >= 0.0, "stall_threshold", "must be >= 0");
  require(c.pac_target > 0.0 && c.pac_target <= 1.0, "pac_target", "must be in (0, 1]");
  require(c.quiescence_eps >= 0.0, "quiescence_eps", "must be >= 0");
  require(c.quiescence_steps >= 1, "quiescence_steps", "must be >= 1");
  require(c.step_cap >= 1, "step_cap", "must be >= 1");
  require(c.grid_resolution >= 2, "grid_resolution", "must be >= 2");
  require(c.wall_margin >= 0.0, "wall_margin", "must be >= 0");
  require(c.noise_scale >= 0.0, "noise_scale", "must be >= 0");
  require(c.ga_neighbor_threshold >= 1, "ga_neighbor_threshold", "must be >= 1");
}

void validate(const GaParams& p) {
  if (p.population < 2) throw ConfigError("ga_population: must be >= 2");
  if (p.generations < 1) throw ConfigError("ga_generations: must be >= 1");
  if (p.elite < 1 || p.elite >= p.population) throw ConfigError("ga_elite: must be in [1, population)");
  if (!(p.mutation_radius > 0.0)) throw ConfigError("ga_mutation_radius: must be > 0");
  if (!(p.movement_penalty >= 0.0)) throw ConfigError("ga_movement_penalty: must be >= 0");
}

PerceivedSets perceive_neighbors(const Snapshot& snap, const Environment& env, const SimConfig& cfg,
                                 Rng& rng) {
  const std::size_t n = snap.nodes.size();
  PerceivedSets out(n);
  const NoiseModel noise = env.noise();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!snap.adjacency(i, j)) continue;
      const Point offset = sample_noise(noise, rng);
      out[i].push_back(snap.nodes[j].position + cfg.noise_scale * offset);
    }
  }
  return out;
}

Point bounded_move(Point from, Point target, const Environment& env, const SimConfig& cfg) {
  const Point d = target - from;
  const double len = norm(d);
  if (len == 0.0) return from;
  const Point desired = len > cfg.max_step ? from + (cfg.max_step / len) * d : target;
  return clamp_to_free_space(from, desired, env, cfg.wall_margin);
}

namespace {

// Largest fraction of the move a -> b that keeps the mover at least `sep`
// from `c`. A mover already inside the exclusion disk may only move away.
double separation_limit(Point a, Point b, Point c, double sep) {
  const Point v = b - a;
  const Point w = a - c;
  const double qa = norm2(v);
  if (qa == 0.0) return 1.0;
  const double qb = 2.0 * dot(w, v);
  const double qc = norm2(w) - sep * sep;
  if (qc < 0.0) return qb < 0.0 ? 0.0 : 1.0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc <= 0.0) return 1.0;
  const double f = (-qb - std::sqrt(disc)) / (2.0 * qa);
  if (f < 0.0 || f >= 1.0) return 1.0;
  return std::max(0.0, f - 1e-9);
}

}  // namespace

void refresh_adjacency(Snapshot& snap, const Environment& env, const SimConfig& cfg, Rng& rng) {
  if (!cfg.noisy_adjacency || env.noise().sigma == 0.0) {
    snap.adjacency = adjacency_from_positions(snap.nodes, env);
    return;
  }
  std::vector<NodeState> seen = snap.nodes;
  for (NodeState& s : seen) {
    const Point moved = s.position + cfg.noise_scale * sample_noise(env.noise(), rng);
    s.position = Point{std::clamp(moved.x, 0.0, env.width()), std::clamp(moved.y, 0.0, env.height())};
  }
  snap.adjacency = adjacency_from_positions(seen, env);
}

Snapshot apply_moves(const Snapshot& snap, std::span<const std::optional<Point>> targets,
                     const Environment& env, const SimConfig& cfg) {
  Snapshot next = snap;
  next.t = snap.t + 1;
  const std::size_t n = snap.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    NodeState& node = next.nodes[i];
    const Point from = node.position;
    if (!targets[i]) continue;
    const Point to = bounded_move(from, *targets[i], env, cfg);
    double f = 1.0;
    if (cfg.min_separation > 0.0) {
      for (std::size_t j = 0; j < n && f > 0.0; ++j) {
        if (j == i) continue;
        f = std::min(f, separation_limit(from, to, next.nodes[j].position, cfg.min_separation));
      }
    }
    const Point end = f == 1.0 ? to : from + f * (to - from);
    node.position = end;
    node.distance_travelled += distance(from, end);
  }
  return next;
}

Snapshot step_voronoi(const Snapshot& snap, const Environment& env, const SimConfig& cfg, Rng& rng) {
  const PerceivedSets perceived = perceive_neighbors(snap, env, cfg, rng);
  const double h = env.width() / cfg.grid_resolution;
  const double hy = env.height() / cfg.grid_resolution;
  const auto cells = kernels::voronoi_cells(snap.nodes, perceived, env, h, hy);
  std::vector<std::optional<Point>> targets;
  targets.reserve(cells.size());
  for (const CellRegion& c : cells) targets.push_back(cell_centroid(c));
  Snapshot next = apply_moves(snap, targets, env, cfg);
  next.strategies.clear();
  refresh_adjacency(next, env, cfg, rng);
  return next;
}

Snapshot inject_node(const Snapshot& snap, const Environment& env, const SimConfig& cfg) {
  if (static_cast<int>(snap.nodes.size()) >= cfg.max_nodes) {
    throw std::logic_error("inject_node: node cap of " + std::to_string(cfg.max_nodes) + " reached");
  }
  const Point inlet = env.inlet();
  auto clearance = [&](Point q) {
    double best = std::numeric_limits<double>::infinity();
    for (const NodeState& s : snap.nodes) best = std::min(best, distance(q, s.position));
    return best;
  };
  Point place = inlet;
  if (clearance(inlet) < cfg.min_separation) {
    constexpr int kDirections = 16;
    double best_clear = -1.0;
    bool found = false;
    for (int k = 0; k < kDirections && !found; ++k) {
      const double a = 2.0 * std::numbers::pi * k / kDirections;
      const Point q = inlet + cfg.min_separation * Point{std::cos(a), std::sin(a)};
      if (!env.in_free_space(q) || !line_of_sight(inlet, q, env)) continue;
      const double c = clearance(q);
      if (c >= cfg.min_separation) {
        place = q;
        found = true;
      } else if (c > best_clear) {
        best_clear = c;
        place = q;
      }
    }
  }
  Snapshot next = snap;
  NodeState node;
  node.id = static_cast<int>(snap.nodes.size()) + 1;
  node.position = place;
  node.sensing_radius = cfg.sensing_radius;
  node.comm_radius = cfg.comm_radius;
  node.injected_at = snap.t;
  next.nodes.push_back(node);
  next.adjacency = adjacency_from_positions(next.nodes, env);
  return next;
}

namespace {

Frame to_frame(const Snapshot& s) {
  Frame f;
  f.t = s.t;
  f.adjacency = s.adjacency;
  f.nodes.reserve(s.nodes.size());
  for (const NodeState& n : s.nodes) f.nodes.push_back({n.id, n.position, n.injected_at});
  f.strategies = s.strategies;
  return f;
}

double distance_sum(const Snapshot& s) {
  double total = 0.0;
  for (const NodeState& n : s.nodes) total += n.distance_travelled;
  return total;
}

}  // namespace

DeploymentResult run_deployment(const Environment& env, const SimConfig& cfg, const GaParams& params) {
  validate(cfg);
  if (cfg.strategy == StrategyKind::kGaVoronoi) validate(params);
  if (!env.in_free_space(env.inlet())) throw ConfigError("inlet: not in free space");

  const RegionGrid grid(env, cfg.grid_resolution, cfg.grid_resolution);
  Rng rng(cfg.seed);
  DeploymentResult result;
  MetricsBundle& m = result.metrics;

  auto record = [&](const Snapshot& s, bool injected) {
    result.tng.push_back(to_frame(s));
    m.pac.push_back(pac(s.nodes, grid));
    m.cdt.push_back(distance_sum(s));
    m.node_count.push_back(static_cast<int>(s.nodes.size()));
    m.injected.push_back(injected ? 1 : 0);
  };

  Snapshot cur = inject_node(Snapshot{}, env, cfg);
  record(cur, true);
  int last_injection = 0;
  if (cfg.max_nodes == 1) m.steps_to_full_injection = 0;
  int still_steps = 0;
  result.status = RunStatus::kNoConvergence;

  const int w = cfg.stall_window;
  for (int t = 1; t <= cfg.step_cap; ++t) {
    Snapshot next = cfg.strategy == StrategyKind::kGaVoronoi ? step_ga_voronoi(cur, env, cfg, params, rng)
                                                             : step_voronoi(cur, env, cfg, rng);
    double max_disp = 0.0;
    for (std::size_t i = 0; i < cur.nodes.size(); ++i) {
      max_disp = std::max(max_disp, distance(cur.nodes[i].position, next.nodes[i].position));
    }

    const int count = static_cast<int>(next.nodes.size());
    bool injected = false;
    if (count < cfg.max_nodes && (t - 1) - last_injection >= w) {
      const double gain = m.pac[static_cast<std::size_t>(t - 1)] - m.pac[static_cast<std::size_t>(t - 1 - w)];
      if (gain < cfg.stall_threshold) {
        next = inject_node(next, env, cfg);
        injected = true;
        last_injection = t;
        if (static_cast<int>(next.nodes.size()) == cfg.max_nodes) m.steps_to_full_injection = t;
      }
    }
    cur = std::move(next);
    record(cur, injected);

    if (static_cast<int>(cur.nodes.size()) < cfg.max_nodes) continue;
    if (injected) {
      still_steps = 0;
    } else {
      still_steps = max_disp < cfg.quiescence_eps ? still_steps + 1 : 0;
    }
    if (still_steps >= cfg.quiescence_steps || m.pac.back() >= cfg.pac_target) {
      result.status = RunStatus::kConverged;
      break;
    }
  }
  m.steps_to_cutoff = cur.t;
  result.final_distance_sum = distance_sum(cur);
  return result;
}

}  // namespace wsn
