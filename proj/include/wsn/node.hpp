#pragma once

#include <vector>

#include "wsn/adjacency.hpp"
#include "wsn/geometry.hpp"

namespace wsn {

struct NodeState {
  int id = 0;  // 1-based, injection order
  Point position;
  double sensing_radius = 1.0;
  double comm_radius = 2.0;
  int injected_at = 0;
  double distance_travelled = 0.0;
};

enum class Strategy { kVoronoi, kGa };

struct Snapshot {
  int t = 0;
  std::vector<NodeState> nodes;
  AdjacencyMatrix adjacency;
  /// Per-node movement rule used to reach this state (GA runs only).
  std::vector<Strategy> strategies;
};

}  // namespace wsn
