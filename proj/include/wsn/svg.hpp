#pragma once

#include <map>
#include <string>
#include <vector>

#include "wsn/measures.hpp"
#include "wsn/tng.hpp"

namespace wsn::svg {

/// Node pairs on the vertical axis in (i, j) order, one horizontal bar per
/// edge interval across the time axis.
std::string edge_diagram(const std::vector<EdgeInterval>& intervals, int steps, int nodes);

/// Bar chart of interval-length counts.
std::string length_histogram(const std::map<int, int>& hist, int bucket_width);

/// One scalar series against t.
std::string series(const std::string& title, const std::string& y_label, const std::vector<double>& values);

/// One polyline per node, starting at the node's injection step.
std::string ec_traces(const MeasureSeries& ec);

/// Diverging colour map over [-1, 1]; undefined cells drawn grey.
std::string heatmap(const CorrelationMap& map, int node_a, int node_b);

}  // namespace wsn::svg
