#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/rng.hpp"
#include "oracles.hpp"

using namespace ergm;

namespace {
std::vector<int> degree_vector(const Graph& g) { return {g.degrees().begin(), g.degrees().end()}; }
}  // namespace

TEST_CASE("toggle on small graphs") {
  Graph g(3);
  g.toggle(make_edge(3, 1, 2));
  CHECK(g.num_edges() == 1);
  CHECK(degree_vector(g) == std::vector<int>{1, 1, 0});

  Graph k4 = Graph::complete(4);
  k4.toggle(make_edge(4, 1, 2));
  CHECK(k4.num_edges() == 5);
  CHECK(degree_vector(k4) == std::vector<int>{2, 2, 3, 3});
}

TEST_CASE("toggle is an involution") {
  Rng rng(7);
  for (int n : {2, 5, 63, 64, 65, 130}) {
    Graph g(n);
    for (std::size_t k = 0; k < pair_count(n); ++k)
      if (rng.uniform() < 0.4) g.toggle(edge_at(n, k));
    const Graph before = g;
    const EdgeIndex s = edge_at(n, rng.below(pair_count(n)));
    g.toggle(s);
    CHECK_FALSE(g == before);
    g.toggle(s);
    CHECK(g == before);
  }
}

TEST_CASE("codegree") {
  Graph tri(4);
  tri.set_edge(make_edge(4, 1, 2), true);
  tri.set_edge(make_edge(4, 1, 3), true);
  tri.set_edge(make_edge(4, 2, 3), true);
  CHECK(tri.codegree(1, 2) == 1);
  CHECK(Graph(5).codegree(1, 2) == 0);
  CHECK(Graph::complete(5).codegree(1, 2) == 3);
  CHECK_THROWS_AS(tri.codegree(2, 2), std::invalid_argument);
}

TEST_CASE("degrees, codegrees and edge totals agree with an adjacency matrix") {
  Rng rng(11);
  for (int n : {3, 17, 64, 70}) {
    Graph g(n);
    for (int t = 0; t < 3 * n; ++t) g.toggle(edge_at(n, rng.below(pair_count(n))));
    const auto a = oracle::matrix(g);
    std::size_t edges = 0;
    for (int i = 0; i < n; ++i) {
      int d = 0;
      for (int j = 0; j < n; ++j) d += a[i][j];
      CHECK(g.degree(i + 1) == d);
      edges += static_cast<std::size_t>(d);
      for (int j = i + 1; j < n; ++j) {
        int c = 0;
        for (int k = 0; k < n; ++k) c += a[i][k] * a[j][k];
        CHECK(g.codegree(i + 1, j + 1) == c);
      }
    }
    CHECK(g.num_edges() * 2 == edges);
  }
}

TEST_CASE("edge indexing is row-major and rejects bad pairs") {
  const int n = 6;
  std::size_t k = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      CHECK(edge_position(n, make_edge(n, i, j)) == k);
      CHECK(edge_at(n, k) == EdgeIndex{i, j});
      ++k;
    }
  CHECK(make_edge(n, 4, 2) == EdgeIndex{2, 4});
  CHECK_THROWS_AS(make_edge(n, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_edge(n, 0, 3), std::out_of_range);
  CHECK_THROWS_AS(make_edge(n, 1, 7), std::out_of_range);
}

TEST_CASE("mask round trip") {
  for (std::uint64_t mask : {0ULL, 1ULL, 0x2aULL, 0x3ffULL}) CHECK(Graph::from_mask(5, mask).mask() == mask);
  CHECK(Graph::from_mask(4, 1).has_edge(1, 2));
}

TEST_CASE("edge list text format") {
  Graph g(5);
  g.set_edge(make_edge(5, 1, 4), true);
  g.set_edge(make_edge(5, 2, 3), true);
  std::stringstream ss;
  write_edge_list(ss, g);
  CHECK(ss.str() == "n 5\n1 4\n2 3\n");
  CHECK(read_edge_list(ss) == g);

  std::istringstream loop("n 3\n2 2\n");
  CHECK_THROWS(read_edge_list(loop));
  std::istringstream no_header("1 2\n");
  CHECK_THROWS(read_edge_list(no_header));
  std::istringstream dangling("n 3\n1\n");
  CHECK_THROWS(read_edge_list(dangling));
}
