#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "ergm/ergm_spec.hpp"
#include "ergm/graph.hpp"
#include "ergm/hoeffding.hpp"
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

Graph motif_as_graph(const Motif& m) {
  Graph g(m.vertices());
  for (const auto& [a, b] : m.edge_list()) g.set_edge(make_edge(m.vertices(), a, b), true);
  return g;
}

}  // namespace

TEST_CASE("centered copy counts") {
  Graph single(3);
  single.set_edge(make_edge(3, 1, 2), true);
  CHECK(centered_copy_count(Motif::two_star(), single, 0.5) == doctest::Approx(-0.25));

  Graph tri(4);
  tri.set_edge(make_edge(4, 1, 2), true);
  tri.set_edge(make_edge(4, 1, 3), true);
  tri.set_edge(make_edge(4, 2, 3), true);
  CHECK(std::abs(centered_copy_count(Motif::two_star(), tri, 0.5)) < 1e-15);

  Rng rng(21);
  const std::vector<Motif> motifs{Motif::edge(), Motif::two_star(), Motif::triangle(), Motif::rectangle(),
                                  Motif(4, {{1, 2}, {3, 4}}), Motif(4, {{1, 2}, {2, 3}, {3, 4}})};
  for (int n : {4, 6, 7})
    for (double p : {0.3, 0.5}) {
      const Graph g = random_graph_for_test(n, 0.5, rng);
      for (const auto& m : motifs) {
        CAPTURE(m.name());
        CHECK(centered_copy_count(m, g, p) == doctest::Approx(oracle::centered_copies(m, g, p)).epsilon(1e-12));
      }
    }
}

TEST_CASE("tilde statistics") {
  Graph single(3);
  single.set_edge(make_edge(3, 1, 2), true);
  const TildeStats ex = tilde_stats(single, 0.5, TildeVariant::Exact);
  CHECK(ex.e_tilde == doctest::Approx(-0.5));
  CHECK(ex.v_tilde == doctest::Approx(-0.25));

  // E = N p exactly
  Graph half(4);
  for (int k : {0, 2, 5}) half.set_edge(edge_at(4, static_cast<std::size_t>(k)), true);
  CHECK(tilde_stats(half, 0.5, TildeVariant::Approximate).e_tilde == 0.0);

  // coefficient gap 2np - 2(n-2)p = 4p
  Rng rng(4);
  for (int rep = 0; rep < 5; ++rep) {
    const Graph g = random_graph_for_test(4, 0.5, rng);
    const TildeStats a = tilde_stats(g, 0.3, TildeVariant::Approximate);
    const TildeStats e = tilde_stats(g, 0.3, TildeVariant::Exact);
    CHECK(e.v_tilde - a.v_tilde == doctest::Approx(4 * 0.3 * a.e_tilde));
  }

  // the exact variant is the centered copy count of the two-star and triangle
  for (int n : {5, 8}) {
    const Graph g = random_graph_for_test(n, 0.6, rng);
    const TildeStats e = tilde_stats(g, 0.4, TildeVariant::Exact);
    CHECK(e.v_tilde == doctest::Approx(oracle::centered_copies(Motif::two_star(), g, 0.4)).epsilon(1e-12));
    CHECK(e.t_tilde == doctest::Approx(oracle::centered_copies(Motif::triangle(), g, 0.4)).epsilon(1e-12));
  }
}

TEST_CASE("subgraph classes of the rectangle") {
  const auto classes = subgraph_classes(Motif::rectangle());
  // edge, two disjoint edges, two-star, three-edge path, four-cycle
  CHECK(classes.size() == 5);
  const Graph host = motif_as_graph(Motif::rectangle());
  std::set<std::pair<int, int>> sizes;
  for (const auto& c : classes) {
    CHECK(c.hom_into_host == oracle::hom(c.subgraph, host));
    sizes.insert({c.subgraph.vertices(), c.subgraph.edges()});
  }
  CHECK(sizes == std::set<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 2}, {4, 3}, {4, 4}});
  CHECK(subgraph_classes(Motif::triangle()).size() == 3);
}

TEST_CASE("two-star decomposition has the expected coefficients") {
  Rng rng(8);
  const Graph g = random_graph_for_test(6, 0.5, rng);
  const double p = 0.3;
  const Decomposition d = full_decomposition(Motif::two_star(), g, p);
  REQUIRE(d.terms.size() == 2);
  CHECK(d.terms[0].coefficient == doctest::Approx(4.0 * (6 - 2) * p));
  CHECK(d.terms[1].coefficient == doctest::Approx(2.0));
  const double two_v = 2.0 * static_cast<double>(oracle::hom(Motif::two_star(), g)) / 2.0;
  const double rhs = expected_hom(Motif::two_star(), 6, p) + 2.0 * oracle::centered_copies(Motif::two_star(), g, p) +
                     4.0 * (6 - 2) * p * oracle::centered_copies(Motif::edge(), g, p);
  CHECK(two_v == doctest::Approx(rhs).epsilon(1e-12));
  const Decomposition e = full_decomposition(Motif::edge(), g, p);
  CHECK(e.reconstructed == doctest::Approx(2.0 * static_cast<double>(g.num_edges())));
}

TEST_CASE("decomposition reconstructs hom counts on every graph with 5 vertices") {
  for (const auto& m : {Motif::two_star(), Motif::triangle(), Motif::rectangle(), Motif(4, {{1, 2}, {2, 3}, {3, 4}}),
                        Motif(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}})})
    for (double p : {0.3, 0.5}) {
      CAPTURE(m.name());
      CHECK(max_reconstruction_residual(m, 5, p) < 1e-9);
    }
}

TEST_CASE("exact moments of centered products") {
  const OrthogonalityResult o = orthogonality_check(4, 0.5);
  CHECK(o.subsets == 63);
  CHECK(o.max_abs_covariance < 1e-12);
  CHECK(o.max_abs_mean < 1e-12);
  CHECK(orthogonality_check(4, 0.3).max_abs_covariance < 1e-12);
  for (const auto& m : {Motif::two_star(), Motif::triangle(), Motif::rectangle()})
    CHECK(std::abs(centered_count_mean(m, 5, 0.3)) < 1e-12);
  CHECK(edge_tilde_variance(5, 0.3) == doctest::Approx(10 * 0.3 * 0.7).epsilon(1e-12));
}

TEST_CASE("edge and two-star remainders are constant") {
  const ErgmSpec spec = ErgmSpec::two_star(-0.2, 0.1);
  Rng rng(17);
  const Graph first = random_graph_for_test(7, 0.5, rng);
  const double r_edge = remainder(spec, first, 0.4, 0);
  const double r_star = remainder(spec, first, 0.4, 1);
  for (int rep = 0; rep < 8; ++rep) {
    const Graph g = random_graph_for_test(7, 0.1 * rep + 0.1, rng);
    CHECK(remainder(spec, g, 0.4, 0) == doctest::Approx(r_edge).epsilon(1e-12));
    CHECK(remainder(spec, g, 0.4, 1) == doctest::Approx(r_star).epsilon(1e-12));
    CHECK(std::abs(delta_remainder_fast(spec, g, 0.4, 1, edge_at(7, static_cast<std::size_t>(rep)))) < 1e-9);
  }
}

TEST_CASE("rectangle remainder: differencing, kernels and the decomposition agree") {
  const ErgmSpec spec = ErgmSpec::rectangle(-0.08, 0.16);
  const double p = 0.5;
  double worst_fast = 0.0;
  double worst_parts = 0.0;
  double worst_total = 0.0;
  oracle::for_each_graph(5, [&](const Graph& g) {
    const RemainderParts parts = remainder_parts(spec, g, p, 1);
    worst_total = std::max(worst_total, std::abs(parts.total() - remainder(spec, g, p, 1)));
    for (std::size_t k = 0; k < pair_count(5); k += 3) {
      const EdgeIndex s = edge_at(5, k);
      const double slow = delta_remainder(spec, g, p, 1, s);
      worst_fast = std::max(worst_fast, std::abs(delta_remainder_fast(spec, g, p, 1, s) - slow));
      Graph plus = g;
      plus.set_edge(s, true);
      Graph minus = g;
      minus.set_edge(s, false);
      const double via_parts = remainder_parts(spec, plus, p, 1).total() - remainder_parts(spec, minus, p, 1).total();
      worst_parts = std::max(worst_parts, std::abs(via_parts - slow));
    }
  });
  CHECK(worst_total < 1e-9);
  CHECK(worst_fast < 1e-9);
  CHECK(worst_parts < 1e-9);

  // the same on a larger random graph with both variants
  Rng rng(23);
  const Graph g = random_graph_for_test(12, 0.5, rng);
  for (auto v : {TildeVariant::Approximate, TildeVariant::Exact})
    for (std::size_t k = 0; k < pair_count(12); k += 7) {
      const EdgeIndex s = edge_at(12, k);
      CHECK(delta_remainder_fast(spec, g, 0.45, 1, s, v) ==
            doctest::Approx(delta_remainder(spec, g, 0.45, 1, s, v)).epsilon(1e-9));
    }
}

TEST_CASE("second-order remainder has a shrinking share of the variance") {
  const ErgmSpec spec = ErgmSpec::rectangle(-0.08, 0.16);
  double prev = 1e300;
  for (int n : {16, 32, 64}) {
    const RemainderVariance v = remainder_variance_mc(spec, 1, n, 0.5, 400, 99);
    CAPTURE(n);
    CHECK(v.var_first > 0.0);
    CHECK(v.ratio() < prev);
    prev = v.ratio();
  }
}
