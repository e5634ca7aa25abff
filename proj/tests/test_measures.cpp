#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"
#include "wsn/measures.hpp"

using namespace wsn;
using namespace wsn::testing;

namespace {

bool is_regular(const AdjacencyMatrix& a) {
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a.degree(i) != a.degree(0)) return false;
  }
  return true;
}

// Circulant graph on n nodes joining i to i +- s for each s in steps.
AdjacencyMatrix circulant(std::size_t n, std::initializer_list<std::size_t> steps) {
  AdjacencyMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s : steps) a.set(i, (i + s) % n);
  }
  return a;
}

double sum_sq(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0, [](double acc, double x) { return acc + x * x; });
}

}  // namespace

TEST_CASE("regularity_difference examples") {
  CHECK(regularity_difference(complete_graph(5)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(regularity_difference(cycle_graph(6)) < 1e-9);
  CHECK(regularity_difference(star_graph(3)) == doctest::Approx(4 * std::sqrt(3.0) - 6).epsilon(1e-9));
  CHECK(regularity_difference(AdjacencyMatrix(0)) == 0.0);
  CHECK(regularity_difference(AdjacencyMatrix(4)) == 0.0);
  const SpectrumSummary k5 = spectrum(complete_graph(5));
  CHECK(k5.lambda_max == doctest::Approx(4.0));
  CHECK(k5.eigenvalues.back() == doctest::Approx(-1.0));
}

TEST_CASE("spectrum agrees with the Jacobi oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 20);
    const AdjacencyMatrix a = random_graph(n, rng.uniform(0.05, 0.9), rng);
    const SpectrumSummary s = spectrum(a);
    const std::vector<double> ref = jacobi_eigenvalues(a);
    REQUIRE(s.eigenvalues.size() == n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(s.eigenvalues[k] - ref[k]) <= 1e-8);
    CHECK(s.lambda_max == s.eigenvalues.front());
    const double trace = std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0);
    CHECK(std::abs(trace) <= 1e-8 * static_cast<double>(n));
    CHECK(sum_sq(s.eigenvalues) == doctest::Approx(2.0 * static_cast<double>(a.edge_count())).epsilon(1e-6));
    const double delta = std::abs(sum_sq(ref) - static_cast<double>(n) * ref.front());
    CHECK(regularity_difference(a) == doctest::Approx(delta).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("zero regularity difference exactly on regular graphs") {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 8);
    const AdjacencyMatrix a = random_graph(n, rng.uniform(0.1, 0.9), rng);
    CHECK((regularity_difference(a) < 1e-9) == is_regular(a));
  }
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t s = 1; s <= n / 2; ++s) CHECK(regularity_difference(circulant(n, {s})) < 1e-9);
    CHECK(regularity_difference(circulant(n, {1, 2})) < 1e-9);
  }
}

TEST_CASE("eigenvector_centrality examples") {
  for (std::size_t n = 2; n <= 10; ++n) {
    const Centrality c = eigenvector_centrality(complete_graph(n));
    CHECK(c.defined);
    for (double v : c.values) CHECK(v == doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))).epsilon(1e-9));
  }
  const Centrality star = eigenvector_centrality(star_graph(3));
  CHECK(star.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  for (std::size_t k = 1; k < 4; ++k) CHECK(star.values[k] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-9));
  CHECK(star.lambda_max == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

  const Centrality empty = eigenvector_centrality(AdjacencyMatrix(5));
  CHECK_FALSE(empty.defined);
  for (double v : empty.values) CHECK(v == 0.0);

  // Isolated node next to an edge.
  AdjacencyMatrix a(3);
  a.set(0, 1);
  const Centrality iso = eigenvector_centrality(a);
  CHECK(iso.values[2] == 0.0);
  CHECK(iso.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("eigenvector_centrality is a unit eigenvector") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 15);
    const AdjacencyMatrix a = random_connected_graph(n, 0.2, rng);
    const Centrality c = eigenvector_centrality(a);
    REQUIRE(c.defined);
    CHECK(sum_sq(c.values) == doctest::Approx(1.0).epsilon(1e-12));
    const double lmax = jacobi_eigenvalues(a).front();
    CHECK(c.lambda_max == doctest::Approx(lmax).epsilon(1e-8));
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (int j : a.neighbors(i)) av += c.values[static_cast<std::size_t>(j)];
      CHECK(std::abs(av - lmax * c.values[i]) <= 1e-7);
      CHECK(c.values[i] >= 0.0);
    }
  }
}

TEST_CASE("eigenvector_centrality relabeling invariance") {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * 12);
    const AdjacencyMatrix a = random_connected_graph(n, 0.25, rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = n - 1; k > 0; --k) {
      std::swap(perm[k], perm[static_cast<std::size_t>(rng.uniform() * static_cast<double>(k + 1))]);
    }
    const Centrality c = eigenvector_centrality(a);
    const Centrality p = eigenvector_centrality(permute(a, perm));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(p.values[i] - c.values[perm[i]]) <= 1e-8);
  }
}

TEST_CASE("degree measures") {
  CHECK(degree_centrality(complete_graph(4)) == std::vector<double>{3, 3, 3, 3});
  CHECK(degree_centrality(complete_graph(4), true) == std::vector<double>{1, 1, 1, 1});
  CHECK(degree_centrality(AdjacencyMatrix(1)) == std::vector<double>{0});
  CHECK(degree_distribution(complete_graph(4)) == std::map<int, int>{{3, 4}});
  CHECK(degree_distribution(star_graph(3)) == std::map<int, int>{{1, 3}, {3, 1}});
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const AdjacencyMatrix a = random_graph(10, 0.3, rng);
    const auto d = degree_centrality(a);
    int total = 0;
    for (const auto& [deg, count] : degree_distribution(a)) total += count;
    CHECK(total == 10);
    for (std::size_t i = 0; i < 10; ++i) {
      int row = 0;
      for (std::size_t j = 0; j < 10; ++j) row += a(i, j) ? 1 : 0;
      CHECK(d[i] == row);
    }
  }
}

TEST_CASE("ec_time_trace") {
  TemporalNetworkGraph tng;
  for (int t = 0; t < 6; ++t) {
    Frame f;
    f.t = t;
    f.adjacency = t == 3 ? AdjacencyMatrix(static_cast<std::size_t>(t / 2 + 1))
                         : complete_graph(static_cast<std::size_t>(t / 2 + 1));
    tng.push_back(std::move(f));
  }
  const MeasureSeries ec = ec_time_trace(tng);
  REQUIRE(ec.values.size() == 6);
  for (int t = 0; t < 6; ++t) {
    const auto n = static_cast<std::size_t>(t / 2 + 1);
    REQUIRE(ec.values[static_cast<std::size_t>(t)].size() == n);
    for (double v : ec.values[static_cast<std::size_t>(t)]) {
      if (t == 3 || n == 1) {
        CHECK(v == 0.0);
      } else {
        CHECK(v == doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))));
      }
    }
  }
  const auto tr = ec.trace(3);
  CHECK(tr.start == 4);
  CHECK(tr.values.size() == 2);
}

TEST_CASE("pearson") {
  const std::vector<double> a{1, 2, 3, 5, 8};
  std::vector<double> neg;
  for (double x : a) neg.push_back(-x);
  CHECK(*pearson(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*pearson(a, neg) == doctest::Approx(-1.0).epsilon(1e-12));
  const std::vector<double> x{1, 2, 3}, y{2, 4, 7};
  // Hand value: covariance sum 5, deviation sums of squares 2 and 114/9.
  CHECK(*pearson(x, y) == doctest::Approx(5.0 / std::sqrt(2.0 * 114.0 / 9.0)).epsilon(1e-12));
  CHECK(*pearson(x, y) == doctest::Approx(0.99339927).epsilon(1e-8));
  const std::vector<double> flat{4, 4, 4};
  CHECK_FALSE(pearson(flat, x).has_value());
  CHECK_FALSE(pearson(x, flat).has_value());
  CHECK_THROWS_AS(pearson(x, a), std::invalid_argument);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(pearson(one, one), std::invalid_argument);
}

TEST_CASE("time_lag_correlation") {
  Rng rng(44);
  MeasureSeries::Trace a{3, {}}, b{5, {}};
  for (int k = 0; k < 60; ++k) a.values.push_back(rng.uniform());
  for (int k = 0; k < 50; ++k) b.values.push_back(rng.uniform());

  SUBCASE("diagonal of a trace with itself and its negation") {
    MeasureSeries::Trace n{a.start, {}};
    for (double v : a.values) n.values.push_back(-v);
    const CorrelationMap self = time_lag_correlation(a, a, 8);
    const CorrelationMap anti = time_lag_correlation(a, n, 8);
    for (int r = 0; r < self.rows; ++r) {
      CHECK(*self.at(r, r) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(*anti.at(r, r) == doctest::Approx(-1.0).epsilon(1e-12));
    }
  }
  SUBCASE("entries match pearson on extracted windows") {
    const int w = 10, s = 3;
    const CorrelationMap m = time_lag_correlation(a, b, w, s);
    CHECK(m.t0 == 5);
    CHECK(m.window == w);
    CHECK(m.stride == s);
    const int overlap = 50;  // common range [5, 55)
    CHECK(m.rows == (overlap - w) / s + 1);
    for (int r = 0; r < m.rows; ++r) {
      for (int c = 0; c < m.cols; ++c) {
        const auto oa = static_cast<std::ptrdiff_t>(m.t0 + r * s - a.start);
        const auto ob = static_cast<std::ptrdiff_t>(m.t0 + c * s - b.start);
        const std::vector<double> wa(a.values.begin() + oa, a.values.begin() + oa + w);
        const std::vector<double> wb(b.values.begin() + ob, b.values.begin() + ob + w);
        CHECK(*m.at(r, c) == doctest::Approx(*pearson(wa, wb)).epsilon(1e-12));
        CHECK(std::abs(*m.at(r, c)) <= 1.0);
      }
    }
  }
  SUBCASE("flat windows are undefined, not zero") {
    MeasureSeries::Trace f{0, std::vector<double>(20, 0.0)};
    for (int k = 10; k < 20; ++k) f.values[static_cast<std::size_t>(k)] = k;
    const CorrelationMap m = time_lag_correlation(f, f, 5);
    CHECK_FALSE(m.at(0, 0).has_value());
    CHECK(m.at(15, 15).has_value());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(time_lag_correlation(a, b, 1), std::invalid_argument);
    CHECK_THROWS_AS(time_lag_correlation(a, b, 59), std::invalid_argument);
    const MeasureSeries::Trace late{200, {1, 2, 3}};
    CHECK_THROWS_AS(time_lag_correlation(a, late, 2), std::invalid_argument);
  }
}
