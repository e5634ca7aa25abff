#include "wsn/tng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wsn/errors.hpp"

namespace wsn {

const char* strategy_label(Strategy s) { return s == Strategy::kGa ? "GA" : "VORONOI"; }

void TemporalNetworkGraph::push_back(Frame frame) {
  if (frame.t != static_cast<int>(frames_.size())) {
    throw std::invalid_argument("frame t=" + std::to_string(frame.t) + " is not the next step " +
                                std::to_string(frames_.size()));
  }
  if (!frames_.empty() && frame.adjacency.size() < frames_.back().adjacency.size()) {
    throw std::invalid_argument("node count decreased at t=" + std::to_string(frame.t));
  }
  if (!frame.adjacency.is_symmetric()) {
    throw std::invalid_argument("adjacency at t=" + std::to_string(frame.t) + " is not a simple graph");
  }
  if (!frame.nodes.empty() && frame.nodes.size() != frame.adjacency.size()) {
    throw std::invalid_argument("position channel size mismatch at t=" + std::to_string(frame.t));
  }
  frames_.push_back(std::move(frame));
}

std::vector<int> TemporalNetworkGraph::injection_times() const {
  std::vector<int> out;
  for (const Frame& f : frames_) {
    while (out.size() < f.adjacency.size()) out.push_back(f.t);
  }
  return out;
}

bool TemporalNetworkGraph::has_positions() const {
  return !frames_.empty() && std::all_of(frames_.begin(), frames_.end(), [](const Frame& f) {
    return f.nodes.size() == f.adjacency.size();
  });
}

AdjacencyMatrix adjacency_from_positions(std::span<const NodeState> nodes, const Environment& env) {
  AdjacencyMatrix adj(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double rc = std::min(nodes[i].comm_radius, nodes[j].comm_radius);
      if (norm2(nodes[i].position - nodes[j].position) > rc * rc) continue;
      if (line_of_sight(nodes[i].position, nodes[j].position, env)) adj.set(i, j);
    }
  }
  return adj;
}

std::vector<EdgeInterval> edge_intervals(const TemporalNetworkGraph& tng) {
  std::vector<EdgeInterval> out;
  const std::size_t n = tng.node_count();
  std::vector<int> open(n * n, -1);
  for (const Frame& f : tng.frames()) {
    const std::size_t m = f.adjacency.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool active = i < m && j < m && f.adjacency(i, j);
        int& start = open[i * n + j];
        if (active && start < 0) {
          start = f.t;
        } else if (!active && start >= 0) {
          out.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, start, f.t - 1});
          start = -1;
        }
      }
    }
  }
  const int last = static_cast<int>(tng.size()) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (open[i * n + j] >= 0) {
        out.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, open[i * n + j], last});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AdjacencyMatrix> adjacency_from_intervals(std::span<const EdgeInterval> intervals,
                                                      std::span<const std::size_t> node_counts) {
  std::vector<AdjacencyMatrix> out;
  out.reserve(node_counts.size());
  for (std::size_t n : node_counts) out.emplace_back(n);
  for (const EdgeInterval& e : intervals) {
    for (int t = e.start; t <= e.end; ++t) {
      auto& a = out.at(static_cast<std::size_t>(t));
      a.set(static_cast<std::size_t>(e.i - 1), static_cast<std::size_t>(e.j - 1));
    }
  }
  return out;
}

std::map<int, int> connection_length_distribution(const TemporalNetworkGraph& tng, int bucket_width) {
  if (bucket_width < 1) throw std::invalid_argument("bucket width must be >= 1");
  std::map<int, int> hist;
  for (const EdgeInterval& e : edge_intervals(tng)) {
    const int len = e.length();
    const int key = bucket_width == 1 ? len : ((len - 1) / bucket_width) * bucket_width + 1;
    ++hist[key];
  }
  return hist;
}

std::set<std::pair<int, int>> missing_pairs(const TemporalNetworkGraph& tng) {
  const std::size_t n = tng.node_count();
  std::vector<std::uint8_t> seen(n * n, 0);
  for (const Frame& f : tng.frames()) {
    const std::size_t m = f.adjacency.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (f.adjacency(i, j)) seen[i * n + j] = 1;
      }
    }
  }
  std::set<std::pair<int, int>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!seen[i * n + j]) out.emplace(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  }
  return out;
}

void write_tng(std::ostream& out, const TemporalNetworkGraph& tng) {
  fmt::memory_buffer buf;
  for (const Frame& f : tng.frames()) {
    const std::size_t n = f.adjacency.size();
    fmt::format_to(std::back_inserter(buf), "S {} {}\n", f.t, n);
    for (const NodeRecord& r : f.nodes) {
      fmt::format_to(std::back_inserter(buf), "N {} {} {} {}\n", r.id, r.position.x, r.position.y,
                     r.injected_at);
    }
    for (std::size_t i = 0; i < f.strategies.size(); ++i) {
      fmt::format_to(std::back_inserter(buf), "A {} {}\n", i + 1, strategy_label(f.strategies[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (f.adjacency(i, j)) fmt::format_to(std::back_inserter(buf), "E {} {}\n", i + 1, j + 1);
      }
    }
    if (buf.size() > (1u << 20)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_tng(const std::filesystem::path& path, const TemporalNetworkGraph& tng) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_tng(out, tng);
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t lineno) : rest_(line), lineno_(lineno) {}

  std::string_view word() {
    while (!rest_.empty() && rest_.front() == ' ') rest_.remove_prefix(1);
    const std::size_t end = std::min(rest_.find(' '), rest_.size());
    std::string_view w = rest_.substr(0, end);
    rest_.remove_prefix(end);
    if (w.empty()) throw ParseError(lineno_, "missing field");
    return w;
  }

  template <class T>
  T number() {
    const std::string_view w = word();
    T v{};
    if constexpr (std::is_floating_point_v<T>) {
      // from_chars for double is unavailable on older libstdc++.
      std::string s(w);
      std::size_t used = 0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size() || s.empty()) throw ParseError(lineno_, "bad number '" + s + "'");
    } else {
      const auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
      if (ec != std::errc{} || p != w.data() + w.size()) {
        throw ParseError(lineno_, "bad integer '" + std::string(w) + "'");
      }
    }
    return v;
  }

  void finish() {
    while (!rest_.empty() && rest_.front() == ' ') rest_.remove_prefix(1);
    if (!rest_.empty()) throw ParseError(lineno_, "trailing fields");
  }

 private:
  std::string_view rest_;
  std::size_t lineno_;
};

struct PendingFrame {
  Frame frame;
  std::size_t header_line = 0;
  int last_i = 0;
  int last_j = 0;
  std::vector<std::uint8_t> have_node;
  std::size_t strategies_seen = 0;
};

void close_frame(TemporalNetworkGraph& tng, PendingFrame& p) {
  Frame& f = p.frame;
  if (!f.nodes.empty()) {
    if (f.nodes.size() != f.adjacency.size()) {
      throw ParseError(p.header_line, "snapshot t=" + std::to_string(f.t) + " has " +
                                          std::to_string(f.nodes.size()) + " N records for " +
                                          std::to_string(f.adjacency.size()) + " nodes");
    }
    std::sort(f.nodes.begin(), f.nodes.end(),
              [](const NodeRecord& a, const NodeRecord& b) { return a.id < b.id; });
  }
  tng.push_back(std::move(f));
}

}  // namespace

TemporalNetworkGraph read_tng(std::istream& in) {
  TemporalNetworkGraph tng;
  std::optional<PendingFrame> cur;
  std::string line;
  std::size_t lineno = 0;
  std::size_t prev_n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    LineParser lp(line, lineno);
    const std::string_view tag = lp.word();
    if (tag == "S") {
      const int t = lp.number<int>();
      const int n = lp.number<int>();
      lp.finish();
      if (cur) close_frame(tng, *cur);
      const int expected = static_cast<int>(tng.size());
      if (t != expected) {
        throw ParseError(lineno, "non-contiguous t: expected t=" + std::to_string(expected) +
                                     ", got t=" + std::to_string(t));
      }
      if (n < 0 || static_cast<std::size_t>(n) < prev_n) {
        throw ParseError(lineno, "node count " + std::to_string(n) + " decreases at t=" + std::to_string(t));
      }
      prev_n = static_cast<std::size_t>(n);
      cur.emplace();
      cur->frame.t = t;
      cur->frame.adjacency = AdjacencyMatrix(static_cast<std::size_t>(n));
      cur->header_line = lineno;
      cur->have_node.assign(static_cast<std::size_t>(n), 0);
      continue;
    }
    if (!cur) throw ParseError(lineno, "record before first snapshot header");
    Frame& f = cur->frame;
    const int n = static_cast<int>(f.adjacency.size());
    if (tag == "E") {
      const int i = lp.number<int>();
      const int j = lp.number<int>();
      lp.finish();
      if (i < 1 || j > n || i >= j) {
        throw ParseError(lineno, "edge (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") must satisfy 1 <= i < j <= " + std::to_string(n));
      }
      if (i < cur->last_i || (i == cur->last_i && j <= cur->last_j)) {
        throw ParseError(lineno, "edges not sorted or duplicated");
      }
      cur->last_i = i;
      cur->last_j = j;
      f.adjacency.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    } else if (tag == "N") {
      NodeRecord r;
      r.id = lp.number<int>();
      r.position.x = lp.number<double>();
      r.position.y = lp.number<double>();
      r.injected_at = lp.number<int>();
      lp.finish();
      if (r.id < 1 || r.id > n) throw ParseError(lineno, "node id " + std::to_string(r.id) + " out of range");
      if (cur->have_node[static_cast<std::size_t>(r.id - 1)]) {
        throw ParseError(lineno, "duplicate N record for node " + std::to_string(r.id));
      }
      cur->have_node[static_cast<std::size_t>(r.id - 1)] = 1;
      f.nodes.push_back(r);
    } else if (tag == "A") {
      const int id = lp.number<int>();
      const std::string_view label = lp.word();
      lp.finish();
      if (id != static_cast<int>(f.strategies.size()) + 1 || id > n) {
        throw ParseError(lineno, "strategy annotations must list node ids 1.. in order");
      }
      if (label == "GA") {
        f.strategies.push_back(Strategy::kGa);
      } else if (label == "VORONOI") {
        f.strategies.push_back(Strategy::kVoronoi);
      } else {
        throw ParseError(lineno, "unknown strategy '" + std::string(label) + "'");
      }
    } else {
      throw ParseError(lineno, "unknown record type '" + std::string(tag) + "'");
    }
  }
  if (!cur) throw ParseError(0, "no snapshots");
  close_frame(tng, *cur);
  return tng;
}

TemporalNetworkGraph read_tng(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_tng(in);
}

}  // namespace wsn
