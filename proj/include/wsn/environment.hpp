#pragma once

#include <span>
#include <variant>
#include <vector>

#include "wsn/geometry.hpp"
#include "wsn/rng.hpp"

namespace wsn {

struct RectObstacle {
  double x0, y0, x1, y1;  // x0 < x1, y0 < y1
};

struct CircleObstacle {
  Point center;
  double radius;
};

/// Impenetrable obstacle. Blocks movement, communication and sensing.
using Obstacle = std::variant<RectObstacle, CircleObstacle>;

/// True iff `p` is strictly inside the obstacle.
bool in_interior(const Obstacle& o, Point p);

/// True iff the closed segment [p, q] meets the obstacle interior.
bool segment_hits(const Obstacle& o, Point p, Point q);

/// Smallest t in [0, 1] at which p + t (q - p) enters the obstacle interior,
/// or a value > 1 if the segment never enters it.
double entry_parameter(const Obstacle& o, Point p, Point q);

/// Axis-aligned bounding box of the obstacle: {xmin, ymin, xmax, ymax}.
struct Box {
  double x0, y0, x1, y1;
};
Box bounding_box(const Obstacle& o);

/// Gaussian perturbation source with zero mean. Noise power is 2 sigma^2.
struct NoiseModel {
  double sigma = 0.0;

  double noise_power() const { return 2.0 * sigma * sigma; }
};

/// Two independent N(0, sigma^2) draws. sigma == 0 returns exactly zero and
/// consumes no randomness.
Point sample_noise(const NoiseModel& model, Rng& rng);

/// Bounded rectangular region [0, width] x [0, height] with obstacles and an
/// inlet. Immutable after construction; the constructor validates invariants
/// and throws ConfigError on violation.
class Environment {
 public:
  Environment(double width, double height, Point inlet, std::vector<Obstacle> obstacles,
              double noise_deviation);

  double width() const { return width_; }
  double height() const { return height_; }
  double area() const { return width_ * height_; }
  Point inlet() const { return inlet_; }
  std::span<const Obstacle> obstacles() const { return obstacles_; }
  NoiseModel noise() const { return NoiseModel{sigma_}; }

  bool in_bounds(Point p) const {
    return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
  }
  /// Inside the bounds and outside every obstacle interior.
  bool in_free_space(Point p) const;

  /// Indices of obstacles whose bounding box comes within `radius` of `p`.
  std::vector<int> obstacles_near(Point p, double radius) const;

 private:
  double width_;
  double height_;
  Point inlet_;
  std::vector<Obstacle> obstacles_;
  double sigma_;
};

/// True iff segment pq meets no obstacle interior.
bool line_of_sight(Point p, Point q, const Environment& env);

/// Same test restricted to a subset of the environment's obstacles.
bool line_of_sight(Point p, Point q, const Environment& env, std::span<const int> subset);

/// Farthest point along from -> to that stays in free space, backed off by
/// `wall_margin` from the first boundary or obstacle the segment meets.
/// Returns `to` unchanged when the whole segment is free.
Point clamp_to_free_space(Point from, Point to, const Environment& env, double wall_margin = 1e-2);

}  // namespace wsn
