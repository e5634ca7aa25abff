#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wsn/environment.hpp"
#include "wsn/errors.hpp"
#include "wsn/rng.hpp"

using namespace wsn;

namespace {

Environment open_env(double w = 10.0, double h = 10.0) { return Environment(w, h, {0.5, 0.5}, {}, 0.0); }

// Exact segment/circle test by point-segment distance.
bool circle_blocks(Point p, Point q, CircleObstacle c) {
  const Point d = q - p;
  double t = std::clamp(dot(c.center - p, d) / norm2(d), 0.0, 1.0);
  const Point closest = p + t * d;
  return distance(closest, c.center) < c.radius;
}

// Parametric segment/rectangle entry oracle: bisect for the first interior point.
double rect_entry(Point p, Point q, RectObstacle r) {
  auto inside = [&](double t) {
    const Point x = p + t * (q - p);
    return x.x > r.x0 && x.x < r.x1 && x.y > r.y0 && x.y < r.y1;
  };
  const int n = 200000;
  for (int k = 0; k <= n; ++k) {
    if (inside(static_cast<double>(k) / n)) {
      double lo = static_cast<double>(k - 1) / n, hi = static_cast<double>(k) / n;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? hi : lo) = mid;
      }
      return hi;
    }
  }
  return 2.0;
}

}  // namespace

TEST_CASE("rng matches the mt19937_64 reference sequence") {
  Rng a(5489);
  // First output of mt19937_64 with the standard default seed.
  CHECK(a.next_u64() == 14514284786278117030ULL);
  Rng b(5489);
  CHECK(b.uniform() == static_cast<double>(14514284786278117030ULL >> 11) * 0x1.0p-53);
  Rng c(5489);
  for (int k = 0; k < 9999; ++k) c.next_u64();
  CHECK(c.next_u64() == 9981545732273789042ULL);
}

TEST_CASE("sample_noise with zero deviation is exactly zero and consumes nothing") {
  Rng a(7);
  Rng b(7);
  const Point z = sample_noise(NoiseModel{0.0}, a);
  CHECK(z.x == 0.0);
  CHECK(z.y == 0.0);
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("sample_noise replays identically for a fixed seed") {
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 100; ++k) {
    const Point p = sample_noise(NoiseModel{0.05}, a);
    const Point q = sample_noise(NoiseModel{0.05}, b);
    CHECK(p == q);
  }
}

TEST_CASE("sample_noise moments over 1e5 draws") {
  const double sigma = 0.05;
  const int n = 100000;
  Rng rng(2024);
  double sx = 0, sy = 0, sxx = 0, syy = 0;
  for (int k = 0; k < n; ++k) {
    const Point p = sample_noise(NoiseModel{sigma}, rng);
    sx += p.x;
    sy += p.y;
    sxx += p.x * p.x;
    syy += p.y * p.y;
  }
  const double mx = sx / n, my = sy / n;
  CHECK(std::abs(mx) <= 3 * sigma / std::sqrt(n));
  CHECK(std::abs(my) <= 3 * sigma / std::sqrt(n));
  const double vx = (sxx - n * mx * mx) / (n - 1);
  const double vy = (syy - n * my * my) / (n - 1);
  CHECK(vx >= 0.95 * sigma * sigma);
  CHECK(vx <= 1.05 * sigma * sigma);
  CHECK(vy >= 0.95 * sigma * sigma);
  CHECK(vy <= 1.05 * sigma * sigma);
  CHECK(NoiseModel{sigma}.noise_power() == doctest::Approx(2 * sigma * sigma));
}

TEST_CASE("line_of_sight examples") {
  CHECK(line_of_sight({0, 0}, {10, 0}, open_env()));
  const Environment wall(12, 12, {0.5, 8}, {RectObstacle{4, 0, 6, 1}}, 0.0);
  CHECK_FALSE(line_of_sight({0, 0.5}, {10, 0.5}, wall));
  const Environment circ(12, 12, {0.5, 8}, {CircleObstacle{{5, 2}, 1}}, 0.0);
  CHECK(line_of_sight({0, 0}, {10, 0}, circ));
  CHECK(line_of_sight({0, 0}, {10, 0}, circ) == !circle_blocks({0, 0}, {10, 0}, {{5, 2}, 1}));
}

TEST_CASE("line_of_sight with the obstacle straddling the segment") {
  // Same geometry as the textbook example shifted into a bounded region.
  const Environment env(20, 20, {1, 1}, {RectObstacle{4, 4, 6, 6}}, 0.0);
  CHECK_FALSE(line_of_sight({0, 5}, {10, 5}, env));
  CHECK(line_of_sight({0, 3}, {10, 3}, env));
  // Grazing an edge does not enter the open interior.
  CHECK(line_of_sight({0, 4}, {10, 4}, env));
}

TEST_CASE("line_of_sight is symmetric and agrees with exact oracles") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Obstacle> obs;
    std::vector<CircleObstacle> circles;
    std::vector<RectObstacle> rects;
    for (int k = 0; k < 3; ++k) {
      const double cx = rng.uniform(2, 8), cy = rng.uniform(2, 8);
      if (rng.uniform() < 0.5) {
        const CircleObstacle c{{cx, cy}, rng.uniform(0.2, 1.5)};
        circles.push_back(c);
        obs.push_back(c);
      } else {
        const RectObstacle r{cx - rng.uniform(0.1, 1.5), cy - rng.uniform(0.1, 1.5), cx + rng.uniform(0.1, 1.5),
                             cy + rng.uniform(0.1, 1.5)};
        rects.push_back(r);
        obs.push_back(r);
      }
    }
    const Environment env(10, 10, {0.1, 0.1}, obs, 0.0);
    for (int k = 0; k < 20; ++k) {
      const Point p{rng.uniform(0, 10), rng.uniform(0, 10)};
      const Point q{rng.uniform(0, 10), rng.uniform(0, 10)};
      const bool los = line_of_sight(p, q, env);
      CHECK(los == line_of_sight(q, p, env));
      bool blocked = false;
      for (const auto& c : circles) blocked = blocked || circle_blocks(p, q, c);
      for (const auto& r : rects) blocked = blocked || rect_entry(p, q, r) <= 1.0;
      CHECK(los == !blocked);
    }
  }
}

TEST_CASE("clamp_to_free_space examples") {
  const Environment env = open_env();
  CHECK(clamp_to_free_space({1, 1}, {2, 2}, env) == Point{2, 2});

  const Environment block(10, 10, {0.5, 0.5}, {RectObstacle{4, 4, 6, 6}}, 0.0);
  const Point a = clamp_to_free_space({1, 5}, {9, 5}, block, 0.01);
  const double t = rect_entry({1, 5}, {9, 5}, RectObstacle{4, 4, 6, 6});
  CHECK(a.x == doctest::Approx(1 + 8 * t - 0.01).epsilon(1e-9));
  CHECK(a.x == doctest::Approx(3.99).epsilon(1e-12));
  CHECK(a.y == 5.0);

  const Point b = clamp_to_free_space({5, 5}, {5, 20}, env, 0.01);
  CHECK(b.x == 5.0);
  CHECK(b.y == doctest::Approx(9.99).epsilon(1e-12));

  CHECK(clamp_to_free_space({3, 3}, {3, 3}, env) == Point{3, 3});
}

TEST_CASE("clamp_to_free_space output stays in free space (fuzz)") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Obstacle> obs;
    for (int k = 0; k < 4; ++k) {
      const double cx = rng.uniform(2, 8), cy = rng.uniform(2, 8);
      if (rng.uniform() < 0.5) {
        obs.push_back(CircleObstacle{{cx, cy}, rng.uniform(0.2, 1.2)});
      } else {
        obs.push_back(RectObstacle{cx - 0.8, cy - 0.5, cx + 0.6, cy + 0.9});
      }
    }
    const Environment env(10, 10, {0.05, 0.05}, obs, 0.0);
    for (int k = 0; k < 50; ++k) {
      Point from{rng.uniform(0, 10), rng.uniform(0, 10)};
      if (!env.in_free_space(from)) continue;
      const Point to{rng.uniform(-5, 15), rng.uniform(-5, 15)};
      const Point c = clamp_to_free_space(from, to, env, 0.01);
      CHECK(env.in_free_space(c));
      CHECK(line_of_sight(from, c, env));
    }
  }
}

TEST_CASE("environment validation") {
  CHECK_THROWS_AS(Environment(0, 10, {1, 1}, {}, 0.0), ConfigError);
  CHECK_THROWS_AS(Environment(10, -1, {1, 1}, {}, 0.0), ConfigError);
  CHECK_THROWS_AS(Environment(10, 10, {11, 1}, {}, 0.0), ConfigError);
  CHECK_THROWS_AS(Environment(10, 10, {1, 1}, {}, -0.1), ConfigError);
  CHECK_THROWS_AS(Environment(10, 10, {1, 1}, {RectObstacle{0.5, 0.5, 2, 2}}, 0.0), ConfigError);
  CHECK_THROWS_AS(Environment(10, 10, {1, 1}, {RectObstacle{8, 8, 11, 9}}, 0.0), ConfigError);
  CHECK_THROWS_AS(Environment(10, 10, {1, 1}, {RectObstacle{3, 3, 3, 4}}, 0.0), ConfigError);
  CHECK_THROWS_AS(Environment(10, 10, {1, 1}, {CircleObstacle{{5, 5}, 0.0}}, 0.0), ConfigError);
  CHECK_NOTHROW(Environment(10, 10, {1, 1}, {CircleObstacle{{5, 5}, 1.0}}, 0.05));
}

TEST_CASE("free space excludes obstacle interiors only") {
  const Environment env(10, 10, {0.5, 0.5}, {RectObstacle{4, 4, 6, 6}, CircleObstacle{{8, 8}, 1}}, 0.0);
  CHECK_FALSE(env.in_free_space({5, 5}));
  CHECK(env.in_free_space({4, 5}));
  CHECK_FALSE(env.in_free_space({8, 8.5}));
  CHECK(env.in_free_space({8, 9}));
  CHECK_FALSE(env.in_free_space({-0.1, 5}));
}
