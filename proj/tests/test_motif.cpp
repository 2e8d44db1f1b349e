#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/motif.hpp"
#include "ergm/rng.hpp"
#include "oracles.hpp"

using namespace ergm;

namespace {

Graph random_graph_for_test(int n, double q, Rng& rng) {
  Graph g(n);
  for (std::size_t k = 0; k < pair_count(n); ++k)
    if (rng.uniform() < q) g.set_edge(edge_at(n, k), true);
  return g;
}

// A few motifs outside the closed-form kernels.
std::vector<Motif> odd_motifs() {
  return {Motif(4, {{1, 2}, {2, 3}, {3, 4}}),                  // path P4
          Motif(4, {{1, 2}, {1, 3}, {1, 4}}),                  // 3-star
          Motif(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}}),          // triangle with pendant
          Motif(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}})};  // C5
}

}  // namespace

TEST_CASE("motif invariants") {
  CHECK(Motif::edge().automorphisms() == 2);
  CHECK(Motif::two_star().automorphisms() == 2);
  CHECK(Motif::triangle().automorphisms() == 6);
  CHECK(Motif::rectangle().automorphisms() == 8);
  CHECK(Motif::rectangle().two_stars() == 4);
  CHECK(Motif::rectangle().triangles() == 0);
  CHECK(Motif::triangle().two_stars() == 3);
  CHECK(Motif::triangle().triangles() == 1);
  for (const auto& m : odd_motifs()) CHECK(m.automorphisms() == oracle::automorphisms(m));
  CHECK(Motif(4, {{3, 1}, {2, 4}, {2, 3}, {4, 1}}).name() == "rectangle");
  CHECK_THROWS_AS(Motif(3, {{1, 2}}), std::invalid_argument);  // isolated vertex
  CHECK_THROWS_AS(Motif(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Motif::named("pentagon"), std::invalid_argument);
}

TEST_CASE("hom counts on complete graphs") {
  const Graph k3 = Graph::complete(3);
  CHECK(hom_count(Motif::two_star(), k3) == 6);
  CHECK(hom_count(Motif::triangle(), k3) == 6);
  CHECK(copy_count(Motif::two_star(), k3) == 3);
  CHECK(copy_count(Motif::triangle(), k3) == 1);
  CHECK(copy_count(Motif::edge(), k3) == 3);
  CHECK(hom_count(Motif::rectangle(), Graph::complete(4)) == 24);
  CHECK(copy_count(Motif::rectangle(), Graph::complete(4)) == 3);

  Graph single(5);
  single.set_edge(make_edge(5, 2, 4), true);
  CHECK(copy_count(Motif::two_star(), single) == 0);
  CHECK(copy_count(Motif::triangle(), single) == 0);
  CHECK(hom_count(Motif::edge(), single) == 2);
}

TEST_CASE("hom counts agree with brute force over injections") {
  Rng rng(3);
  std::vector<Motif> motifs{Motif::edge(), Motif::two_star(), Motif::triangle(), Motif::rectangle()};
  for (const auto& m : odd_motifs()) motifs.push_back(m);
  for (int n : {4, 6, 8}) {
    for (int rep = 0; rep < 4; ++rep) {
      const Graph g = random_graph_for_test(n, 0.2 + 0.2 * rep, rng);
      for (const auto& m : motifs) {
        if (m.vertices() > n) continue;
        CAPTURE(n);
        CAPTURE(m.name());
        const auto expected = oracle::hom(m, g);
        CHECK(hom_count(m, g) == expected);
        CHECK(hom_count_generic(m, g) == expected);
      }
    }
  }
}

TEST_CASE("kernels agree with the generic counter on larger graphs") {
  Rng rng(5);
  for (int n : {40, 70}) {
    const Graph g = random_graph_for_test(n, 0.3, rng);
    for (const auto& m : {Motif::two_star(), Motif::triangle(), Motif::rectangle()})
      CHECK(hom_count(m, g) == hom_count_generic(m, g));
  }
}

TEST_CASE("incremental deltas") {
  Rng rng(9);
  // K4 minus (1,2), s = (1,2): each endpoint has degree 2 without s, so
  // adding s creates 2 + 2 two-stars and closes 2 triangles
  Graph g = Graph::complete(4);
  const EdgeIndex s = make_edge(4, 1, 2);
  g.set_edge(s, false);
  CHECK(delta_copy(Motif::two_star(), g, s) == 4);
  CHECK(delta_copy(Motif::two_star(), g, s) ==
        static_cast<std::int64_t>(oracle::hom(Motif::two_star(), Graph::complete(4)) - oracle::hom(Motif::two_star(), g)) / 2);
  CHECK(delta_copy(Motif::triangle(), g, s) == 2);
  CHECK(delta_copy(Motif::edge(), g, s) == 1);
  // the delta does not depend on the current state of s
  g.set_edge(s, true);
  CHECK(delta_copy(Motif::two_star(), g, s) == 4);

  const Graph empty(6);
  CHECK(delta_copy(Motif::two_star(), empty, make_edge(6, 2, 5)) == 0);
  CHECK(delta_copy(Motif::triangle(), empty, make_edge(6, 2, 5)) == 0);

  std::vector<Motif> motifs{Motif::edge(), Motif::two_star(), Motif::triangle(), Motif::rectangle()};
  for (const auto& m : odd_motifs()) motifs.push_back(m);
  for (int n : {5, 7, 9}) {
    for (int rep = 0; rep < 6; ++rep) {
      Graph h = random_graph_for_test(n, 0.5, rng);
      const EdgeIndex t = edge_at(n, rng.below(pair_count(n)));
      Graph plus = h;
      plus.set_edge(t, true);
      Graph minus = h;
      minus.set_edge(t, false);
      for (const auto& m : motifs) {
        CAPTURE(m.name());
        const auto expected =
            static_cast<std::int64_t>(oracle::hom(m, plus)) - static_cast<std::int64_t>(oracle::hom(m, minus));
        CHECK(delta_hom(m, h, t) == expected);
      }
    }
  }
}

TEST_CASE("four-paths between the endpoints") {
  Rng rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 7;
    const Graph g = random_graph_for_test(n, 0.5, rng);
    const EdgeIndex s = edge_at(n, rng.below(pair_count(n)));
    // paths a - x - y - b with a, x, y, b distinct and not using s
    const auto a = oracle::matrix(g);
    std::int64_t count = 0;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const int u = s.i - 1;
        const int w = s.j - 1;
        if (x == y || x == u || x == w || y == u || y == w) continue;
        count += a[u][x] * a[x][y] * a[y][w];
      }
    CHECK(four_paths_between(g, s) == count);
  }
}

TEST_CASE("expectations under G(n, p)") {
  CHECK(expected_copies(Motif::edge(), 3, 0.5) == doctest::Approx(1.5));
  CHECK(expected_copies(Motif::two_star(), 4, 0.5) == doctest::Approx(3.0));
  for (const auto& m : {Motif::edge(), Motif::two_star(), Motif::triangle(), Motif::rectangle()})
    CHECK(expected_hom(m, 6, 0.0) == 0.0);
  CHECK_THROWS_AS(expected_hom(Motif::edge(), 4, 1.5), std::domain_error);
  CHECK(falling_factorial(5, 3) == 60.0);
  CHECK(falling_factorial(5, 0) == 1.0);

  // enumeration oracle: the average over all 2^6 graphs on 4 vertices
  for (double p : {0.5, 0.3}) {
    double ev = 0.0;
    double er = 0.0;
    oracle::for_each_graph(4, [&](const Graph& g) {
      const double w = oracle::gnp_probability(g, p);
      ev += w * static_cast<double>(oracle::hom(Motif::two_star(), g)) / 2.0;
      er += w * static_cast<double>(oracle::hom(Motif::rectangle(), g));
    });
    CHECK(expected_copies(Motif::two_star(), 4, p) == doctest::Approx(ev).epsilon(1e-12));
    CHECK(expected_hom(Motif::rectangle(), 4, p) == doctest::Approx(er).epsilon(1e-12));
  }
}
