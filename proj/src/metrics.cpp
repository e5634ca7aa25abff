#include "wsn/metrics.hpp"

#include <algorithm>

#include "wsn/errors.hpp"
#include "wsn/kernels.hpp"

namespace wsn {

double pac(std::span<const NodeState> nodes, const RegionGrid& grid) {
  if (grid.free_count() == 0 || nodes.empty()) return 0.0;
  const auto mask = kernels::coverage_mask(grid, nodes);
  const auto covered = std::count(mask.begin(), mask.end(), std::uint8_t{1});
  return static_cast<double>(covered) / static_cast<double>(grid.free_count());
}

std::vector<double> cdt(const TemporalNetworkGraph& tng) {
  if (!tng.has_positions()) {
    throw MissingDataError("CDT needs the node position channel (N records), which this log lacks");
  }
  std::vector<double> out;
  out.reserve(tng.size());
  double total = 0.0;
  for (std::size_t t = 0; t < tng.size(); ++t) {
    if (t > 0) {
      const auto& prev = tng[t - 1].nodes;
      const auto& cur = tng[t].nodes;
      for (std::size_t k = 0; k < prev.size(); ++k) total += distance(prev[k].position, cur[k].position);
    }
    out.push_back(total);
  }
  return out;
}

}  // namespace wsn
