#include "wsn/environment.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "wsn/errors.hpp"

namespace wsn {
namespace {

constexpr double kNoHit = 2.0;

struct Interval {
  double lo;
  double hi;
};

// Open parameter interval where the 1D coordinate a + t d lies in (lo, hi).
Interval slab(double a, double d, double lo, double hi) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (d == 0.0) {
    return (a > lo && a < hi) ? Interval{-inf, inf} : Interval{inf, -inf};
  }
  const double ta = (lo - a) / d;
  const double tb = (hi - a) / d;
  return {std::min(ta, tb), std::max(ta, tb)};
}

// Parameter interval (open) of the infinite line through p, q inside the
// rectangle interior.
Interval rect_interval(const RectObstacle& r, Point p, Point q) {
  const Point d = q - p;
  const Interval ix = slab(p.x, d.x, r.x0, r.x1);
  const Interval iy = slab(p.y, d.y, r.y0, r.y1);
  return {std::max(ix.lo, iy.lo), std::min(ix.hi, iy.hi)};
}

double bounds_exit(Point p, Point q, double w, double h) {
  const Point d = q - p;
  double t = std::numeric_limits<double>::infinity();
  if (d.x > 0.0) t = std::min(t, (w - p.x) / d.x);
  if (d.x < 0.0) t = std::min(t, -p.x / d.x);
  if (d.y > 0.0) t = std::min(t, (h - p.y) / d.y);
  if (d.y < 0.0) t = std::min(t, -p.y / d.y);
  return t;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

bool in_interior(const Obstacle& o, Point p) {
  return std::visit(
      Overloaded{
          [&](const RectObstacle& r) { return p.x > r.x0 && p.x < r.x1 && p.y > r.y0 && p.y < r.y1; },
          [&](const CircleObstacle& c) { return norm2(p - c.center) < c.radius * c.radius; },
      },
      o);
}

bool segment_hits(const Obstacle& o, Point p, Point q) {
  return std::visit(Overloaded{
                        [&](const RectObstacle& r) {
                          const Interval i = rect_interval(r, p, q);
                          return i.lo < i.hi && i.lo < 1.0 && i.hi > 0.0;
                        },
                        [&](const CircleObstacle& c) {
                          return segment_distance2(p, q, c.center) < c.radius * c.radius;
                        },
                    },
                    o);
}

double entry_parameter(const Obstacle& o, Point p, Point q) {
  return std::visit(
      Overloaded{
          [&](const RectObstacle& r) {
            const Interval i = rect_interval(r, p, q);
            if (i.lo < i.hi && i.lo < 1.0 && i.hi > 0.0) return std::max(i.lo, 0.0);
            return kNoHit;
          },
          [&](const CircleObstacle& c) {
            const Point d = q - p;
            const Point m = p - c.center;
            const double a = norm2(d);
            const double b = 2.0 * dot(d, m);
            const double cc = norm2(m) - c.radius * c.radius;
            if (cc < 0.0) return 0.0;
            if (a == 0.0) return kNoHit;
            const double disc = b * b - 4.0 * a * cc;
            if (disc <= 0.0) return kNoHit;
            const double t = (-b - std::sqrt(disc)) / (2.0 * a);
            return (t >= 0.0 && t <= 1.0) ? t : kNoHit;
          },
      },
      o);
}

Box bounding_box(const Obstacle& o) {
  return std::visit(Overloaded{
                        [](const RectObstacle& r) { return Box{r.x0, r.y0, r.x1, r.y1}; },
                        [](const CircleObstacle& c) {
                          return Box{c.center.x - c.radius, c.center.y - c.radius,
                                     c.center.x + c.radius, c.center.y + c.radius};
                        },
                    },
                    o);
}

Point sample_noise(const NoiseModel& model, Rng& rng) {
  if (model.sigma == 0.0) return {0.0, 0.0};
  const double dx = rng.normal(0.0, model.sigma);
  const double dy = rng.normal(0.0, model.sigma);
  return {dx, dy};
}

Environment::Environment(double width, double height, Point inlet, std::vector<Obstacle> obstacles,
                         double noise_deviation)
    : width_(width), height_(height), inlet_(inlet), obstacles_(std::move(obstacles)),
      sigma_(noise_deviation) {
  if (!(width_ > 0.0) || !(height_ > 0.0)) {
    throw ConfigError("environment: width and height must be positive");
  }
  if (!(sigma_ >= 0.0)) throw ConfigError("environment: noise_deviation must be >= 0");
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    const Obstacle& o = obstacles_[i];
    const std::string tag = "obstacle " + std::to_string(i + 1) + ": ";
    if (const auto* r = std::get_if<RectObstacle>(&o)) {
      if (!(r->x1 > r->x0) || !(r->y1 > r->y0)) throw ConfigError(tag + "rectangle has no area");
    } else if (!(std::get<CircleObstacle>(o).radius > 0.0)) {
      throw ConfigError(tag + "circle radius must be positive");
    }
    const Box b = bounding_box(o);
    if (b.x0 < 0.0 || b.y0 < 0.0 || b.x1 > width_ || b.y1 > height_) {
      throw ConfigError(tag + "not contained in the region");
    }
    if (in_interior(o, inlet_)) throw ConfigError(tag + "covers the inlet");
  }
  if (!in_bounds(inlet_)) throw ConfigError("environment: inlet outside the region");
}

bool Environment::in_free_space(Point p) const {
  if (!in_bounds(p)) return false;
  return std::none_of(obstacles_.begin(), obstacles_.end(),
                      [&](const Obstacle& o) { return in_interior(o, p); });
}

std::vector<int> Environment::obstacles_near(Point p, double radius) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < obstacles_.size(); ++i) {
    const Box b = bounding_box(obstacles_[i]);
    const double dx = std::max({b.x0 - p.x, 0.0, p.x - b.x1});
    const double dy = std::max({b.y0 - p.y, 0.0, p.y - b.y1});
    if (dx * dx + dy * dy <= radius * radius) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool line_of_sight(Point p, Point q, const Environment& env) {
  const auto obs = env.obstacles();
  return std::none_of(obs.begin(), obs.end(), [&](const Obstacle& o) { return segment_hits(o, p, q); });
}

bool line_of_sight(Point p, Point q, const Environment& env, std::span<const int> subset) {
  const auto obs = env.obstacles();
  return std::none_of(subset.begin(), subset.end(),
                      [&](int i) { return segment_hits(obs[static_cast<std::size_t>(i)], p, q); });
}

Point clamp_to_free_space(Point from, Point to, const Environment& env, double wall_margin) {
  const Point d = to - from;
  const double len = norm(d);
  if (len == 0.0) return from;
  double t_hit = bounds_exit(from, to, env.width(), env.height());
  bool blocked = t_hit < 1.0;
  for (const Obstacle& o : env.obstacles()) {
    const double t = entry_parameter(o, from, to);
    if (t <= 1.0) {
      blocked = true;
      t_hit = std::min(t_hit, t);
    }
  }
  if (!blocked) return to;
  const double t = std::max(0.0, t_hit - wall_margin / len);
  return from + t * d;
}

}  // namespace wsn
