#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wsn/config.hpp"
#include "wsn/deployment.hpp"
#include "wsn/measures.hpp"
#include "wsn/tng.hpp"

namespace wsn {

// CSV writers. Metadata lines start with "# key value" and precede the
// header row. Reals use the shortest representation that round-trips.

/// t, node_count, pac, cdt, injected_this_step
void write_metrics_csv(std::ostream& out, const MetricsBundle& m);

/// t, n, delta_reg
void write_regularity_csv(std::ostream& out, const TemporalNetworkGraph& tng, const std::vector<double>& reg);

/// Rescales each snapshot's vector for export: kL2 leaves it as computed,
/// kMax divides by the largest entry (all-zero vectors stay zero).
MeasureSeries normalize_ec(const MeasureSeries& ec, EcNormalization mode);

/// t, node_id, ec (with "# normalization" metadata)
void write_ec_traces_csv(std::ostream& out, const MeasureSeries& ec, EcNormalization mode);

/// t, degree, count
void write_degree_hist_csv(std::ostream& out, const TemporalNetworkGraph& tng);

/// i, j, c where i and j are the window start steps of the two traces;
/// undefined entries are written as NA.
void write_correlation_csv(std::ostream& out, const CorrelationMap& map, int node_a, int node_b);

/// i, j, start, end, length
void write_edge_intervals_csv(std::ostream& out, const std::vector<EdgeInterval>& intervals);

/// length, count (length is the bucket's lower edge)
void write_length_hist_csv(std::ostream& out, const std::map<int, int>& hist, int bucket_width);

/// i, j, gap (gap = j - i)
void write_missing_pairs_csv(std::ostream& out, const std::set<std::pair<int, int>>& pairs);

/// t, cdt
void write_cdt_csv(std::ostream& out, const std::vector<double>& cdt);

struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ParseError if absent.
  std::size_t column(const std::string& name) const;
};

/// Reads files produced by the writers above. Throws ParseError with the
/// line number on ragged rows or a missing header.
CsvTable read_csv(std::istream& in);

/// Window stride used when the options leave it at 0: keeps the map at no
/// more than 200 rows for a trace overlap of `len` steps.
int auto_stride(int len, int window);

}  // namespace wsn
