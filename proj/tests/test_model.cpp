#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergm/ergm_spec.hpp"
#include "ergm/graph.hpp"
#include "ergm/model.hpp"
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

std::vector<ErgmSpec> specs() {
  return {ErgmSpec::edge_only(0.3), ErgmSpec::two_star(-0.2, 0.1), ErgmSpec::triangle(-0.1, 0.2),
          ErgmSpec::rectangle(-0.08, 0.16),
          ErgmSpec({{Motif::edge(), -0.1}, {Motif::triangle(), 0.05}, {Motif(4, {{1, 2}, {2, 3}, {3, 4}}), 0.07}})};
}

}  // namespace

TEST_CASE("exact log-weight against brute-force hom counts") {
  Rng rng(31);
  const ErgmSpec spec = ErgmSpec::rectangle(-0.08, 0.16);
  for (int n : {4, 6}) {
    const Graph g = random_graph_for_test(n, 0.5, rng);
    const double expected = -0.08 * static_cast<double>(oracle::hom(Motif::edge(), g)) +
                            0.16 * static_cast<double>(oracle::hom(Motif::rectangle(), g)) / (n * n);
    CHECK(log_weight(ExactModel{}, spec, g) == doctest::Approx(expected).epsilon(1e-12));
  }
  const Graph g = random_graph_for_test(7, 0.5, rng);
  CHECK(log_weight(ExactModel{}, ErgmSpec::edge_only(0.3), g) ==
        doctest::Approx(2 * 0.3 * static_cast<double>(g.num_edges())));
}

TEST_CASE("delta log-weight equals the log-weight difference") {
  Rng rng(37);
  for (const auto& spec : specs()) {
    const double p = 0.45;
    const std::vector<ModelKind> kinds{ExactModel{}, FirstOrderModel{p}, second_order(spec, p)};
    for (int n : {4, 7, 12}) {
      for (int rep = 0; rep < 4; ++rep) {
        const Graph g = random_graph_for_test(n, 0.25 * (rep + 1) - 0.05, rng);
        const EdgeIndex s = edge_at(n, rng.below(pair_count(n)));
        Graph plus = g;
        plus.set_edge(s, true);
        Graph minus = g;
        minus.set_edge(s, false);
        for (const auto& k : kinds) {
          CAPTURE(model_name(k));
          CHECK(delta_log_weight(k, spec, g, s) ==
                doctest::Approx(log_weight(k, spec, plus) - log_weight(k, spec, minus)).epsilon(1e-9));
        }
        if (second_order(spec, p).c_triangle == 0.0) {
          const ModelKind rw = two_star_rewrite(spec, p);
          CHECK(delta_log_weight(rw, spec, g, s) ==
                doctest::Approx(log_weight(rw, spec, plus) - log_weight(rw, spec, minus)).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("model-specific deltas") {
  const ErgmSpec rect = ErgmSpec::rectangle(-0.08, 0.16);
  Rng rng(41);
  const Graph g = random_graph_for_test(6, 0.5, rng);
  for (std::size_t k = 0; k < pair_count(6); ++k) {
    const EdgeIndex s = edge_at(6, k);
    CHECK(delta_log_weight(FirstOrderModel{0.3}, rect, g, s) == doctest::Approx(std::log(0.3 / 0.7)));
    Graph plus = g;
    plus.set_edge(s, true);
    Graph minus = g;
    minus.set_edge(s, false);
    const double d_rect = static_cast<double>(oracle::hom(Motif::rectangle(), plus)) -
                          static_cast<double>(oracle::hom(Motif::rectangle(), minus));
    CHECK(delta_log_weight(ExactModel{}, rect, g, s) == doctest::Approx(0.16 * d_rect / 36.0 + 2 * -0.08));
  }
  const TwoStarRewriteModel rw{-0.16, 0.16};
  CHECK(delta_log_weight(rw, rect, Graph(4), make_edge(4, 1, 2)) == doctest::Approx(-0.32));
}

TEST_CASE("rewrite coefficients for the rectangle spec") {
  const ErgmSpec rect = ErgmSpec::rectangle(-0.08, 0.16);
  const SecondOrderModel so = second_order(rect, 0.5);
  CHECK(so.c_triangle == 0.0);
  CHECK(so.c_two_star == doctest::Approx(4 * 0.16 * 0.25));
  const TwoStarRewriteModel rw = two_star_rewrite(rect, 0.5);
  CHECK(rw.beta2_tilde == doctest::Approx(0.16));
  CHECK(rw.beta1_tilde == doctest::Approx(-0.16));
  const TwoStarRewriteModel rw3 = two_star_rewrite(rect, 0.3);
  CHECK(rw3.beta2_tilde == doctest::Approx(4 * 0.16 * 0.09));
  CHECK(rw3.beta1_tilde == doctest::Approx(-8 * 0.16 * 0.027 + 0.5 * std::log(0.3 / 0.7)));
  CHECK_THROWS_AS(two_star_rewrite(ErgmSpec::triangle(-0.1, 0.2), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(model_from_name("third", rect, 0.5), std::invalid_argument);
}

TEST_CASE("log-weights that should differ by a constant") {
  const ErgmSpec rect = ErgmSpec::rectangle(-0.08, 0.16);
  const Model second(second_order(rect, 0.5), rect);
  const Model rewrite(two_star_rewrite(rect, 0.5), rect);
  double lo = 1e300;
  double hi = -1e300;
  oracle::for_each_graph(5, [&](const Graph& g) {
    const double d = second.log_weight(g) - rewrite.log_weight(g);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  });
  CHECK(hi - lo < 1e-12);

  // no higher-order terms: the second-order model is G(n, p)
  const ErgmSpec flat({{Motif::edge(), 0.2}, {Motif::rectangle(), 0.0}});
  const Model so(second_order(flat, 0.4), flat);
  const Model fo(FirstOrderModel{0.4}, flat);
  Rng rng(43);
  const double base = so.log_weight(Graph(6)) - fo.log_weight(Graph(6));
  for (int rep = 0; rep < 5; ++rep) {
    const Graph g = random_graph_for_test(6, 0.5, rng);
    CHECK(so.log_weight(g) - fo.log_weight(g) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("reference probabilities") {
  const ErgmSpec rect = ErgmSpec::rectangle(-0.08, 0.16);
  CHECK(Model(ExactModel{}, rect).reference_p().value() == doctest::Approx(0.5));
  CHECK(Model(FirstOrderModel{0.3}, rect).reference_p().value() == 0.3);
  CHECK(Model(two_star_rewrite(rect, 0.5), rect).reference_p().value() == doctest::Approx(0.5));
  CHECK(Model(ExactModel{}, rect).max_motif_vertices() == 4);
  CHECK(Model(two_star_rewrite(rect, 0.5), rect).max_motif_vertices() == 3);
}
