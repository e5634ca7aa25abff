#include "wsn/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace wsn::svg {
namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

struct Frame {
  double width;
  double height;
  double x0, x1;  // data range
  double y0, y1;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (width - kLeft - kRight); }
  double py(double y) const { return height - kBottom - (y - y0) / (y1 - y0) * (height - kTop - kBottom); }
};

std::string open(double w, double h, const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      w, h, w / 2, title);
}

std::string axes(const Frame& f, const std::string& xl, const std::string& yl) {
  std::string s = fmt::format(
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n"
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\" stroke=\"black\"/>\n",
      kLeft, f.height - kBottom, f.width - kRight, kTop);
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", (kLeft + f.width - kRight) / 2,
                   f.height - 12, xl);
  s += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
                   (kTop + f.height - kBottom) / 2, yl);
  for (int k = 0; k <= 4; ++k) {
    const double x = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double y = f.y0 + (f.y1 - f.y0) * k / 4.0;
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", f.px(x),
                     f.height - kBottom + 16, x);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 4, f.py(y) + 4, y);
  }
  return s;
}

std::string polyline(const Frame& f, const std::vector<double>& v, int t0, const std::string& colour) {
  std::string pts;
  for (std::size_t k = 0; k < v.size(); ++k) {
    pts += fmt::format("{:.2f},{:.2f} ", f.px(static_cast<double>(t0) + static_cast<double>(k)), f.py(v[k]));
  }
  return fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"{}\"/>\n", colour, pts);
}

// Evenly spaced hues, fixed saturation and value, as #rrggbb.
std::string hue(int k, int n) {
  const double h = n > 0 ? 6.0 * k / n : 0.0;
  const double v = 0.8;
  const double c = v * 0.75;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = v - c;
  auto byte = [&](double u) { return static_cast<int>(std::lround(255.0 * (u + m))); };
  return fmt::format("#{:02x}{:02x}{:02x}", byte(r), byte(g), byte(b));
}

}  // namespace

std::string edge_diagram(const std::vector<EdgeInterval>& intervals, int steps, int nodes) {
  const int pairs = std::max(1, nodes * (nodes - 1) / 2);
  const double row = std::clamp(600.0 / pairs, 1.0, 12.0);
  Frame f{900.0, kTop + kBottom + row * pairs, 0.0, static_cast<double>(std::max(1, steps)), 0.0,
          static_cast<double>(pairs)};
  std::string s = open(f.width, f.height, "Edge intervals");
  s += axes(f, "time step", "node pair (i, j)");
  auto index = [&](int i, int j) {
    // rank of (i, j) among pairs in lexicographic order
    return (i - 1) * nodes - (i - 1) * i / 2 + (j - i - 1);
  };
  for (const EdgeInterval& e : intervals) {
    const double y = f.py(index(e.i, e.j) + 0.5);
    s += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"steelblue\" "
                     "stroke-width=\"{:.2f}\"/>\n",
                     f.px(e.start), y, f.px(e.end + 1), y, std::max(0.5, row * 0.8));
  }
  return s + "</svg>\n";
}

std::string length_histogram(const std::map<int, int>& hist, int bucket_width) {
  int max_len = bucket_width;
  int max_count = 1;
  for (const auto& [len, c] : hist) {
    max_len = std::max(max_len, len + bucket_width);
    max_count = std::max(max_count, c);
  }
  Frame f{900.0, 450.0, 0.0, static_cast<double>(max_len), 0.0, static_cast<double>(max_count)};
  std::string s = open(f.width, f.height, "Connection length distribution");
  s += axes(f, "interval length (steps)", "count");
  for (const auto& [len, c] : hist) {
    const double x0 = f.px(len);
    const double x1 = f.px(len + bucket_width);
    s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"steelblue\"/>\n", x0,
                     f.py(c), std::max(0.5, x1 - x0), f.py(0) - f.py(c));
  }
  return s + "</svg>\n";
}

std::string series(const std::string& title, const std::string& y_label, const std::vector<double>& values) {
  double hi = 1e-12;
  double lo = 0.0;
  for (double v : values) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  Frame f{900.0, 400.0, 0.0, static_cast<double>(std::max<std::size_t>(1, values.size() - (values.empty() ? 0 : 1))),
          lo, hi};
  std::string s = open(f.width, f.height, title);
  s += axes(f, "time step", y_label);
  s += polyline(f, values, 0, "steelblue");
  return s + "</svg>\n";
}

std::string ec_traces(const MeasureSeries& ec) {
  const std::size_t steps = ec.values.size();
  const std::size_t nodes = steps ? ec.values.back().size() : 0;
  Frame f{900.0, 450.0, 0.0, static_cast<double>(std::max<std::size_t>(1, steps)), 0.0, 1.0};
  std::string s = open(f.width, f.height, "Eigenvector centrality");
  s += axes(f, "time step", "EC");
  for (std::size_t k = 0; k < nodes; ++k) {
    const auto tr = ec.trace(static_cast<int>(k + 1));
    s += polyline(f, tr.values, tr.start, hue(static_cast<int>(k), static_cast<int>(nodes)));
  }
  return s + "</svg>\n";
}

std::string heatmap(const CorrelationMap& map, int node_a, int node_b) {
  const double side = 600.0;
  const double cell = side / std::max(1, std::max(map.rows, map.cols));
  const double w = kLeft + side + 80.0;
  const double h = kTop + side + kBottom;
  std::string s = open(w, h, fmt::format("Time-lag correlation, nodes {} and {} (window {})", node_a, node_b, map.window));
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      const auto& v = map.at(r, c);
      std::string colour = "#bbbbbb";
      if (v) {
        const double x = std::clamp(*v, -1.0, 1.0);
        const int a = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(x))));
        colour = x >= 0 ? fmt::format("rgb(255,{0},{0})", a) : fmt::format("rgb({0},{0},255)", a);
      }
      s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                       kLeft + c * cell, kTop + r * cell, cell + 0.05, cell + 0.05, colour);
    }
  }
  s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">window start, node {} (t0 {} stride {})</text>\n",
                   kLeft + side / 2, h - 12, node_b, map.t0, map.stride);
  s += fmt::format("<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">"
                   "window start, node {1}</text>\n",
                   kTop + side / 2, node_a);
  const double lx = kLeft + side + 20.0;
  for (int k = 0; k <= 20; ++k) {
    const double x = 1.0 - k / 10.0;
    const int a = static_cast<int>(std::lround(255.0 * (1.0 - std::abs(x))));
    const std::string colour = x >= 0 ? fmt::format("rgb(255,{0},{0})", a) : fmt::format("rgb({0},{0},255)", a);
    s += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"16\" height=\"{:.2f}\" fill=\"{}\"/>\n", lx,
                     kTop + k * side / 21.0, side / 21.0 + 0.05, colour);
  }
  s += fmt::format("<text x=\"{0}\" y=\"{1}\">1</text><text x=\"{0}\" y=\"{2}\">-1</text>\n", lx + 20, kTop + 12,
                   kTop + side);
  return s + "</svg>\n";
}

}  // namespace wsn::svg
