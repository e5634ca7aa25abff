#pragma once

#include <span>
#include <vector>

#include "wsn/grid.hpp"
#include "wsn/node.hpp"
#include "wsn/tng.hpp"

namespace wsn {

/// Percent area coverage as a fraction: free grid cells whose center lies
/// within some node's sensing radius and in its line of sight, over all free
/// cells. Returns 0 when the region has no free cell.
double pac(std::span<const NodeState> nodes, const RegionGrid& grid);

/// Cumulative distance travelled by all nodes at every step, rebuilt from the
/// log's position channel. Throws MissingDataError without that channel.
std::vector<double> cdt(const TemporalNetworkGraph& tng);

}  // namespace wsn
