#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "wsn/adjacency.hpp"
#include "wsn/environment.hpp"
#include "wsn/geometry.hpp"
#include "wsn/node.hpp"

namespace wsn {

/// Position-channel record of one node at one step.
struct NodeRecord {
  int id = 0;
  Point position;
  int injected_at = 0;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct Frame {
  int t = 0;
  AdjacencyMatrix adjacency;
  std::vector<NodeRecord> nodes;        // empty when the position channel is absent
  std::vector<Strategy> strategies;     // per node, may cover a prefix of the nodes

  friend bool operator==(const Frame&, const Frame&) = default;
};

/// Time-ordered adjacency sequence. Frame k has t == k and node counts never
/// decrease.
class TemporalNetworkGraph {
 public:
  TemporalNetworkGraph() = default;

  /// Appends a frame; throws std::invalid_argument if t is not the next step,
  /// the node count shrinks, or the matrix is not a simple graph.
  void push_back(Frame frame);

  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  const Frame& operator[](std::size_t t) const { return frames_[t]; }
  std::span<const Frame> frames() const { return frames_; }

  /// Node count of the last frame.
  std::size_t node_count() const { return frames_.empty() ? 0 : frames_.back().adjacency.size(); }

  /// First step at which each node (0-based index) is present.
  std::vector<int> injection_times() const;

  /// True when every frame carries a full position channel.
  bool has_positions() const;

  friend bool operator==(const TemporalNetworkGraph&, const TemporalNetworkGraph&) = default;

 private:
  std::vector<Frame> frames_;
};

/// Maximal run of consecutive steps during which edge (i, j) is active.
/// Node ids are 1-based, i < j, and [start, end] is inclusive.
struct EdgeInterval {
  int i = 0;
  int j = 0;
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  friend auto operator<=>(const EdgeInterval&, const EdgeInterval&) = default;
};

/// a_ij = 1 iff i != j, distance <= min of both comm radii, and line of sight.
AdjacencyMatrix adjacency_from_positions(std::span<const NodeState> nodes, const Environment& env);

/// Intervals sorted by (i, j, start).
std::vector<EdgeInterval> edge_intervals(const TemporalNetworkGraph& tng);

/// Rebuilds the per-frame edge sets from intervals (inverse of edge_intervals
/// given the node counts of each frame).
std::vector<AdjacencyMatrix> adjacency_from_intervals(std::span<const EdgeInterval> intervals,
                                                      std::span<const std::size_t> node_counts);

/// Histogram of interval lengths. With bucket_width w, key b counts lengths
/// in [b, b + w); the default unit width keys each exact length.
std::map<int, int> connection_length_distribution(const TemporalNetworkGraph& tng, int bucket_width = 1);

/// Unordered pairs (i < j, 1-based) of nodes present in the final frame that
/// are never adjacent.
std::set<std::pair<int, int>> missing_pairs(const TemporalNetworkGraph& tng);

/// Line-oriented text log: "S t n", then optional "N id x y injected_at" and
/// "A id strategy" records, then "E i j" records sorted by (i, j).
void write_tng(std::ostream& out, const TemporalNetworkGraph& tng);
void write_tng(const std::filesystem::path& path, const TemporalNetworkGraph& tng);

/// Throws ParseError carrying the 1-based line number of the first problem.
TemporalNetworkGraph read_tng(std::istream& in);
TemporalNetworkGraph read_tng(const std::filesystem::path& path);

const char* strategy_label(Strategy s);

}  // namespace wsn
