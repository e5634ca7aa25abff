#include "wsn/export.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "wsn/errors.hpp"

namespace wsn {

void write_metrics_csv(std::ostream& out, const MetricsBundle& m) {
  out << "t,node_count,pac,cdt,injected_this_step\n";
  for (std::size_t t = 0; t < m.pac.size(); ++t) {
    fmt::print(out, "{},{},{},{},{}\n", t, m.node_count[t], m.pac[t], m.cdt[t], m.injected[t]);
  }
}

void write_regularity_csv(std::ostream& out, const TemporalNetworkGraph& tng, const std::vector<double>& reg) {
  out << "t,n,delta_reg\n";
  for (std::size_t t = 0; t < reg.size(); ++t) fmt::print(out, "{},{},{}\n", t, tng[t].adjacency.size(), reg[t]);
}

MeasureSeries normalize_ec(const MeasureSeries& ec, EcNormalization mode) {
  MeasureSeries out = ec;
  if (mode == EcNormalization::kL2) return out;
  for (auto& v : out.values) {
    const double top = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    if (top > 0.0) {
      for (double& x : v) x /= top;
    }
  }
  return out;
}

void write_ec_traces_csv(std::ostream& out, const MeasureSeries& ec, EcNormalization mode) {
  const MeasureSeries s = normalize_ec(ec, mode);
  fmt::print(out, "# normalization {}\n", to_string(mode));
  out << "t,node_id,ec\n";
  for (std::size_t t = 0; t < s.values.size(); ++t) {
    for (std::size_t k = 0; k < s.values[t].size(); ++k) fmt::print(out, "{},{},{}\n", t, k + 1, s.values[t][k]);
  }
}

void write_degree_hist_csv(std::ostream& out, const TemporalNetworkGraph& tng) {
  out << "t,degree,count\n";
  for (std::size_t t = 0; t < tng.size(); ++t) {
    for (const auto& [d, c] : degree_distribution(tng[t].adjacency)) fmt::print(out, "{},{},{}\n", t, d, c);
  }
}

void write_correlation_csv(std::ostream& out, const CorrelationMap& map, int node_a, int node_b) {
  fmt::print(out, "# pair {}:{}\n# window {}\n# stride {}\n# t0 {}\n# undefined NA\n", node_a, node_b, map.window,
             map.stride, map.t0);
  out << "i,j,c\n";
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      const auto& v = map.at(r, c);
      const int ti = map.t0 + r * map.stride;
      const int tj = map.t0 + c * map.stride;
      if (v) {
        fmt::print(out, "{},{},{}\n", ti, tj, *v);
      } else {
        fmt::print(out, "{},{},NA\n", ti, tj);
      }
    }
  }
}

void write_edge_intervals_csv(std::ostream& out, const std::vector<EdgeInterval>& intervals) {
  out << "i,j,start,end,length\n";
  for (const EdgeInterval& e : intervals) fmt::print(out, "{},{},{},{},{}\n", e.i, e.j, e.start, e.end, e.length());
}

void write_length_hist_csv(std::ostream& out, const std::map<int, int>& hist, int bucket_width) {
  fmt::print(out, "# bucket_width {}\n", bucket_width);
  out << "length,count\n";
  for (const auto& [len, count] : hist) fmt::print(out, "{},{}\n", len, count);
}

void write_missing_pairs_csv(std::ostream& out, const std::set<std::pair<int, int>>& pairs) {
  out << "i,j,gap\n";
  for (const auto& [i, j] : pairs) fmt::print(out, "{},{},{}\n", i, j, j - i);
}

void write_cdt_csv(std::ostream& out, const std::vector<double>& cdt) {
  out << "t,cdt\n";
  for (std::size_t t = 0; t < cdt.size(); ++t) fmt::print(out, "{},{}\n", t, cdt[t]);
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ParseError(0, "missing column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!table.header.empty()) throw ParseError(lineno, "metadata after the header row");
      const std::string body = line.substr(line.find_first_not_of("# ") == std::string::npos ? line.size() : line.find_first_not_of("# "));
      const auto sp = body.find(' ');
      table.meta[body.substr(0, sp)] = sp == std::string::npos ? "" : body.substr(sp + 1);
      continue;
    }
    auto cells = split_commas(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError(lineno, "expected " + std::to_string(table.header.size()) + " fields, got " +
                                   std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw ParseError(0, "no header row");
  return table;
}

int auto_stride(int len, int window) {
  const int starts = std::max(1, len - window + 1);
  return std::max(1, (starts + 199) / 200);
}

}  // namespace wsn
