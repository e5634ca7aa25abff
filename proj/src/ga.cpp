#include "wsn/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wsn/kernels.hpp"

namespace wsn {

Strategy select_strategy(int neighbor_count, int threshold) {
  return neighbor_count >= threshold ? Strategy::kVoronoi : Strategy::kGa;
}

double ga_fitness(Point candidate, const NodeState& node, std::span<const Point> perceived_neighbors,
                  const Environment& env, double hx, double hy, double movement_penalty) {
  const double r = node.sensing_radius;
  const double r2 = r * r;
  const double sx = 2.0 * hx;
  const double sy = 2.0 * hy;
  const Point self = node.position;

  const double ramp = std::max(sx, sy);
  std::vector<Point> nbrs;
  for (Point q : perceived_neighbors) {
    if (distance(q, candidate) <= 2.0 * r + ramp) nbrs.push_back(q);
  }
  const std::vector<int> near = env.obstacles_near(candidate, r);
  const auto obstacles = env.obstacles();

  // Disk membership ramps linearly across one lattice spacing so the estimate
  // varies continuously with the candidate position.
  auto member = [&](Point x, Point c) { return std::clamp((r - distance(x, c)) / ramp + 0.5, 0.0, 1.0); };

  double fresh = 0.0;
  double shared = 0.0;
  const int kmax = static_cast<int>(std::floor(r / sx));
  const int lmax = static_cast<int>(std::floor(r / sy));
  for (int l = -lmax; l <= lmax; ++l) {
    for (int k = -kmax; k <= kmax; ++k) {
      const double vx = k * sx;
      const double vy = l * sy;
      if (vx * vx + vy * vy > r2) continue;
      const Point x{candidate.x + vx, candidate.y + vy};
      if (!env.in_bounds(x)) continue;
      bool visible = true;
      for (int oi : near) {
        const Obstacle& o = obstacles[static_cast<std::size_t>(oi)];
        if (in_interior(o, x) || segment_hits(o, candidate, x)) {
          visible = false;
          break;
        }
      }
      if (!visible) continue;
      double by_neighbor = 0.0;
      for (Point q : nbrs) by_neighbor = std::max(by_neighbor, member(x, q));
      shared += by_neighbor;
      fresh += (1.0 - by_neighbor) * (1.0 - member(x, self));
    }
  }
  const double cell = sx * sy;
  return (fresh - shared) * cell - movement_penalty * distance(candidate, self);
}

namespace {

struct Candidate {
  Point p;
  double fitness;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  if (a.p.x != b.p.x) return a.p.x < b.p.x;
  return a.p.y < b.p.y;
}

}  // namespace

Point ga_propose(const NodeState& node, std::span<const Point> perceived_neighbors,
                 std::optional<Point> centroid, const Environment& env, const SimConfig& cfg,
                 const GaParams& params, Rng& rng) {
  const Point self = node.position;
  const double reach = cfg.max_step;
  const double hx = env.width() / cfg.grid_resolution;
  const double hy = env.height() / cfg.grid_resolution;

  auto feasible = [&](Point q) {
    return env.in_free_space(q) && clamp_to_free_space(self, q, env, cfg.wall_margin) == q;
  };
  auto evaluate = [&](Point q) {
    return Candidate{q, ga_fitness(q, node, perceived_neighbors, env, hx, hy, params.movement_penalty)};
  };
  auto into_reach = [&](Point q) {
    const Point d = q - self;
    const double len = norm(d);
    return len > reach ? self + (reach / len) * d : q;
  };

  Candidate best = evaluate(self);
  std::vector<Candidate> pop;
  pop.reserve(static_cast<std::size_t>(params.population));
  if (centroid) {
    const Point seed = bounded_move(self, *centroid, env, cfg);
    if (seed != self) pop.push_back(evaluate(seed));
  }
  const int max_attempts = 10 * params.population;
  for (int a = 0; a < max_attempts && static_cast<int>(pop.size()) < params.population; ++a) {
    const double rad = reach * std::sqrt(rng.uniform());
    const double ang = 2.0 * std::numbers::pi * rng.uniform();
    const Point q = self + Point{rad * std::cos(ang), rad * std::sin(ang)};
    if (feasible(q)) pop.push_back(evaluate(q));
  }
  if (pop.empty()) return self;

  const auto elite_count = static_cast<std::size_t>(params.elite);
  for (int g = 0;; ++g) {
    std::sort(pop.begin(), pop.end(), better);
    if (better(pop.front(), best)) best = pop.front();
    if (g + 1 >= params.generations) break;
    const std::size_t keep = std::min(elite_count, pop.size());
    std::vector<Candidate> next(pop.begin(), pop.begin() + static_cast<std::ptrdiff_t>(keep));
    for (std::size_t c = 0; next.size() < static_cast<std::size_t>(params.population); ++c) {
      const Candidate& parent = pop[c % keep];
      Point child = parent.p;
      for (int tries = 0; tries < 8; ++tries) {
        const Point q = into_reach(parent.p + Point{rng.normal(0.0, params.mutation_radius),
                                                    rng.normal(0.0, params.mutation_radius)});
        if (feasible(q)) {
          child = q;
          break;
        }
      }
      next.push_back(evaluate(child));
    }
    pop = std::move(next);
  }
  // Push the winner out to the edge of the reachable disk if that is no worse.
  const Point d = best.p - self;
  if (const double len = norm(d); len > 0.0 && len < reach) {
    const Point edge = self + (reach / len) * d;
    if (feasible(edge)) {
      const Candidate e = evaluate(edge);
      if (e.fitness >= best.fitness) best = e;
    }
  }
  return best.p;
}

Snapshot step_ga_voronoi(const Snapshot& snap, const Environment& env, const SimConfig& cfg,
                         const GaParams& params, Rng& rng) {
  const PerceivedSets perceived = perceive_neighbors(snap, env, cfg, rng);
  const double hx = env.width() / cfg.grid_resolution;
  const double hy = env.height() / cfg.grid_resolution;
  const auto cells = kernels::voronoi_cells(snap.nodes, perceived, env, hx, hy);

  const std::size_t n = snap.nodes.size();
  std::vector<std::optional<Point>> targets(n);
  std::vector<Strategy> used(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::optional<Point> centroid = cell_centroid(cells[i]);
    used[i] = select_strategy(snap.adjacency.degree(i), cfg.ga_neighbor_threshold);
    if (used[i] == Strategy::kVoronoi) {
      targets[i] = centroid;
    } else {
      targets[i] = ga_propose(snap.nodes[i], perceived[i], centroid, env, cfg, params, rng);
    }
  }
  Snapshot next = apply_moves(snap, targets, env, cfg);
  next.strategies = std::move(used);
  refresh_adjacency(next, env, cfg, rng);
  return next;
}

}  // namespace wsn
