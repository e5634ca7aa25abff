#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wsn/errors.hpp"
#include "wsn/grid.hpp"
#include "wsn/kernels.hpp"
#include "wsn/metrics.hpp"

using namespace wsn;

namespace {

NodeState node_at(int id, Point p, double rs = 1.0) {
  NodeState n;
  n.id = id;
  n.position = p;
  n.sensing_radius = rs;
  n.comm_radius = 2 * rs;
  return n;
}

// One node moving along x by `speed` per step, plus an optional later node.
TemporalNetworkGraph walk(int steps, double speed, bool second) {
  TemporalNetworkGraph tng;
  for (int t = 0; t < steps; ++t) {
    Frame f;
    f.t = t;
    const bool two = second && t >= 2;
    f.adjacency = AdjacencyMatrix(two ? 2 : 1);
    f.nodes.push_back(NodeRecord{1, {1.0 + speed * t, 1.0}, 0});
    if (two) f.nodes.push_back(NodeRecord{2, {5.0, 2.0 + 0.5 * (t - 2)}, 2});
    tng.push_back(std::move(f));
  }
  return tng;
}

}  // namespace

TEST_CASE("pac examples") {
  const Environment env(10, 10, {0.5, 0.5}, {}, 0.0);
  const RegionGrid grid(env, 200, 200);
  CHECK(pac({}, grid) == 0.0);
  const std::vector<NodeState> huge{node_at(1, {5, 5}, 15.0)};
  CHECK(pac(huge, grid) == 1.0);

  const double expect = std::numbers::pi / 100.0;
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<NodeState> one{node_at(1, {rng.uniform(1, 9), rng.uniform(1, 9)})};
    CHECK(std::abs(pac(one, grid) - expect) <= 0.02 * expect);
  }
}

TEST_CASE("pac with obstacles counts only free cells") {
  const Environment env(10, 10, {0.5, 0.5}, {RectObstacle{0, 5, 10, 10}}, 0.0);
  const RegionGrid grid(env, 100, 100);
  CHECK(grid.free_count() == 5000);
  const std::vector<NodeState> huge{node_at(1, {5, 2}, 15.0)};
  CHECK(pac(huge, grid) == 1.0);
}

TEST_CASE("sealed chambers stay dark until entered") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const double x0 = rng.uniform(1, 6), y0 = rng.uniform(1, 6), side = rng.uniform(1.5, 3), wall = 0.1;
    const double x1 = x0 + side, y1 = y0 + side;
    const Environment env(10, 10, {0.2, 0.2},
                          {RectObstacle{x0, y0, x1, y0 + wall}, RectObstacle{x0, y1 - wall, x1, y1},
                           RectObstacle{x0, y0 + wall, x0 + wall, y1 - wall},
                           RectObstacle{x1 - wall, y0 + wall, x1, y1 - wall}},
                          0.0);
    const RegionGrid grid(env, 100, 100);
    auto inside = [&](Point p) { return p.x > x0 + wall && p.x < x1 - wall && p.y > y0 + wall && p.y < y1 - wall; };
    Point out;
    do {
      out = {rng.uniform(0, 10), rng.uniform(0, 10)};
    } while (!env.in_free_space(out) || inside(out) ||
             (out.x > x0 - 0.01 && out.x < x1 + 0.01 && out.y > y0 - 0.01 && out.y < y1 + 0.01));
    const std::vector<NodeState> outside{node_at(1, out, 20.0)};
    const auto mask = kernels::coverage_mask(grid, outside);
    int lit_inside = 0, free_inside = 0;
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        if (!grid.is_free(i, j) || !inside(grid.center(i, j))) continue;
        ++free_inside;
        lit_inside += mask[static_cast<std::size_t>(j) * grid.nx() + i];
      }
    }
    REQUIRE(free_inside > 0);
    CHECK(lit_inside == 0);
    CHECK(pac(outside, grid) <= 1.0 - static_cast<double>(free_inside) / grid.free_count() + 1e-12);

    const std::vector<NodeState> both{outside[0], node_at(2, {0.5 * (x0 + x1), 0.5 * (y0 + y1)}, 20.0)};
    const auto lit = kernels::coverage_mask(grid, both);
    int now = 0;
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        if (grid.is_free(i, j) && inside(grid.center(i, j))) now += lit[static_cast<std::size_t>(j) * grid.nx() + i];
      }
    }
    CHECK(now == free_inside);
  }
}

TEST_CASE("cdt examples") {
  const std::vector<double> moving = cdt(walk(6, 1.0, false));
  CHECK(moving == std::vector<double>{0, 1, 2, 3, 4, 5});
  const std::vector<double> still = cdt(walk(4, 0.0, false));
  CHECK(still == std::vector<double>{0, 0, 0, 0});
  const std::vector<double> two = cdt(walk(5, 1.0, true));
  CHECK(two == std::vector<double>{0, 1, 2, 3.5, 5});

  TemporalNetworkGraph bare;
  Frame f;
  f.adjacency = AdjacencyMatrix(1);
  bare.push_back(f);
  try {
    cdt(bare);
    FAIL("expected MissingDataError");
  } catch (const MissingDataError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}
