#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wsn/ga.hpp"

using namespace wsn;

namespace {

constexpr double kPi = std::numbers::pi;

NodeState make_node(int id, Point p) {
  NodeState n;
  n.id = id;
  n.position = p;
  n.sensing_radius = 1.0;
  n.comm_radius = 2.0;
  return n;
}

// Area of disk(c, R) outside disk(self, R) for centers d apart.
double crescent(double R, double d) {
  if (d >= 2 * R) return kPi * R * R;
  const double lens = 2 * R * R * std::acos(d / (2 * R)) - 0.5 * d * std::sqrt(4 * R * R - d * d);
  return kPi * R * R - lens;
}

Environment scatter_env() {
  return Environment(10, 10, {0.5, 0.5},
                     {RectObstacle{3, 3, 3.6, 3.6}, RectObstacle{6, 2, 6.6, 2.6}, CircleObstacle{{5, 7}, 0.4}}, 0.0);
}

}  // namespace

TEST_CASE("select_strategy threshold") {
  CHECK(select_strategy(2) == Strategy::kGa);
  CHECK(select_strategy(5) == Strategy::kVoronoi);
  CHECK(select_strategy(0) == Strategy::kGa);
  CHECK(select_strategy(4) == Strategy::kVoronoi);
  CHECK(select_strategy(3) == Strategy::kGa);
  CHECK(select_strategy(3, 3) == Strategy::kVoronoi);
}

TEST_CASE("fitness of a lone node matches the crescent area") {
  const Environment env(10, 10, {0.5, 0.5}, {}, 0.0);
  const NodeState n = make_node(1, {5, 5});
  const double lambda = 0.1;
  // Lattice spacing 0.01; the count error is bounded by the two boundary arcs.
  const double h = 0.005;
  const double tol = 2 * kPi * 2 * h;
  double prev = -1e9;
  for (double d : {0.0, 0.05, 0.1, 0.15, 0.2, 0.25}) {
    const Point c{5 + d * 0.6, 5 + d * 0.8};
    const double f = ga_fitness(c, n, {}, env, h, h, lambda);
    CHECK(std::abs(f - (crescent(1.0, d) - lambda * d)) <= tol);
    CHECK(f >= prev);
    prev = f;
  }
  CHECK(std::abs(ga_fitness({5, 5}, n, {}, env, h, h, 0.0)) <= tol);
}

TEST_CASE("fitness penalises overlap with a neighbor") {
  const Environment env(10, 10, {0.5, 0.5}, {}, 0.0);
  const NodeState n = make_node(1, {5, 5});
  const std::vector<Point> nb{{6.5, 5}};
  const double toward = ga_fitness({5.25, 5}, n, nb, env, 0.01, 0.01, 0.0);
  const double away = ga_fitness({4.75, 5}, n, nb, env, 0.01, 0.01, 0.0);
  CHECK(away > toward);
}

TEST_CASE("lone node in open space moves the full step") {
  const Environment env(10, 10, {0.5, 0.5}, {}, 0.0);
  SimConfig cfg;
  const GaParams params;
  const double h = env.width() / cfg.grid_resolution;
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const NodeState n = make_node(1, {rng.uniform(3, 7), rng.uniform(3, 7)});
    const Point p = ga_propose(n, {}, n.position, env, cfg, params, rng);
    CHECK(distance(p, n.position) == doctest::Approx(cfg.max_step).epsilon(1e-9));
    // Exhaustive grid over the reachable disk.
    double grid_best = -1e9;
    for (int a = -25; a <= 25; ++a) {
      for (int b = -25; b <= 25; ++b) {
        const Point q = n.position + Point{a * 0.01, b * 0.01};
        if (distance(q, n.position) > cfg.max_step) continue;
        grid_best = std::max(grid_best, ga_fitness(q, n, {}, env, h, h, params.movement_penalty));
      }
    }
    const double got = ga_fitness(p, n, {}, env, h, h, params.movement_penalty);
    // Lattice anisotropy allows a tenth of one lattice cell.
    CHECK(got >= grid_best - 0.1 * (2 * h) * (2 * h));
  }
}

TEST_CASE("ga_propose is deterministic and stays reachable") {
  const Environment env = scatter_env();
  SimConfig cfg;
  const GaParams params;
  const double h = env.width() / cfg.grid_resolution;
  Rng pick(21);
  for (int trial = 0; trial < 100; ++trial) {
    Point p;
    do {
      p = {pick.uniform(0, 10), pick.uniform(0, 10)};
    } while (!env.in_free_space(p));
    const NodeState n = make_node(1, p);
    std::vector<Point> nb;
    for (int k = 0; k < 3; ++k) nb.push_back(p + Point{pick.uniform(-1.5, 1.5), pick.uniform(-1.5, 1.5)});
    const std::optional<Point> centroid = p + Point{pick.uniform(-0.5, 0.5), pick.uniform(-0.5, 0.5)};

    Rng a(trial), b(trial);
    const Point qa = ga_propose(n, nb, centroid, env, cfg, params, a);
    const Point qb = ga_propose(n, nb, centroid, env, cfg, params, b);
    CHECK(qa == qb);
    CHECK(distance(qa, p) <= cfg.max_step + 1e-12);
    CHECK(env.in_free_space(qa));
    CHECK(line_of_sight(p, qa, env));

    const double best = ga_fitness(qa, n, nb, env, h, h, params.movement_penalty);
    CHECK(best >= ga_fitness(p, n, nb, env, h, h, params.movement_penalty));
    const Point seeded = bounded_move(p, *centroid, env, cfg);
    CHECK(best >= ga_fitness(seeded, n, nb, env, h, h, params.movement_penalty));
  }
}

TEST_CASE("boxed-in node stays put") {
  // Walls a hair away on every side leave no feasible candidate.
  const Environment env(10, 10, {0.5, 0.5},
                        {RectObstacle{4.0, 4.0, 6.0, 4.995}, RectObstacle{4.0, 5.005, 6.0, 6.0},
                         RectObstacle{4.0, 4.995, 4.995, 5.005}, RectObstacle{5.005, 4.995, 6.0, 5.005}},
                        0.0);
  SimConfig cfg;
  Rng rng(2);
  const NodeState n = make_node(1, {5, 5});
  CHECK(ga_propose(n, {}, std::nullopt, env, cfg, GaParams{}, rng) == Point{5, 5});
}

TEST_CASE("dense neighborhoods reduce to the Voronoi step") {
  const Environment env(10, 10, {0.5, 0.5}, {}, 0.0);
  SimConfig cfg;
  Snapshot s;
  const Point pts[] = {{5, 5}, {5.6, 5.1}, {4.5, 5.4}, {5.2, 4.4}, {4.7, 4.6}, {5.4, 5.7}};
  for (int k = 0; k < 6; ++k) s.nodes.push_back(make_node(k + 1, pts[k]));
  s.adjacency = AdjacencyMatrix(6);
  Rng r0(1);
  refresh_adjacency(s, env, cfg, r0);
  for (std::size_t i = 0; i < 6; ++i) REQUIRE(s.adjacency.degree(i) >= 4);

  Rng a(3), b(3);
  const Snapshot v = step_voronoi(s, env, cfg, a);
  const Snapshot g = step_ga_voronoi(s, env, cfg, GaParams{}, b);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(v.nodes[i].position == g.nodes[i].position);
    CHECK(g.strategies[i] == Strategy::kVoronoi);
  }
}

TEST_CASE("recorded strategy follows the degree before the step") {
  const Environment env = scatter_env();
  SimConfig cfg;
  cfg.max_nodes = 25;
  cfg.strategy = StrategyKind::kGaVoronoi;
  cfg.step_cap = 400;
  const DeploymentResult r = run_deployment(env, cfg);
  int ga = 0, vor = 0;
  for (std::size_t t = 1; t < r.tng.size(); ++t) {
    const Frame& prev = r.tng[t - 1];
    const Frame& cur = r.tng[t];
    REQUIRE(cur.strategies.size() == prev.nodes.size());
    for (std::size_t i = 0; i < prev.nodes.size(); ++i) {
      CHECK(cur.strategies[i] == select_strategy(prev.adjacency.degree(i), cfg.ga_neighbor_threshold));
      (cur.strategies[i] == Strategy::kGa ? ga : vor)++;
    }
  }
  CHECK(ga > 0);
  CHECK(vor > 0);
}
