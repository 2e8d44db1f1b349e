#include "ergm/hoeffding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ergm/rng.hpp"

namespace ergm {

namespace {

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability outside [0, 1]");
}

// Sum over injective maps V(h) -> V(g) of prod_edges (Z - p).
class CenteredSum {
 public:
  CenteredSum(const Motif& h, const Graph& g, double p) : h_(h), g_(g), p_(p) {
    image_.assign(static_cast<std::size_t>(h.vertices()) + 1, 0);
    used_.assign(static_cast<std::size_t>(g.n()) + 1, false);
  }

  double run() { return recurse(1, 1.0); }

 private:
  double recurse(int hv, double partial) {
    if (hv > h_.vertices()) return partial;
    double total = 0.0;
    for (int gv = 1; gv <= g_.n(); ++gv) {
      if (used_[static_cast<std::size_t>(gv)]) continue;
      double factor = partial;
      for (int u = 1; u < hv; ++u) {
        if (!h_.adjacent(u, hv)) continue;
        const double z = g_.has_edge(image_[static_cast<std::size_t>(u)], gv) ? 1.0 : 0.0;
        factor *= z - p_;
      }
      image_[static_cast<std::size_t>(hv)] = gv;
      used_[static_cast<std::size_t>(gv)] = true;
      total += recurse(hv + 1, factor);
      used_[static_cast<std::size_t>(gv)] = false;
    }
    return total;
  }

  const Motif& h_;
  const Graph& g_;
  double p_;
  std::vector<int> image_;
  std::vector<bool> used_;
};

using EdgeSet = std::vector<std::pair<int, int>>;

EdgeSet canonical_form(int v, const EdgeSet& edges) {
  std::vector<int> perm(static_cast<std::size_t>(v));
  std::iota(perm.begin(), perm.end(), 1);
  EdgeSet best;
  bool have = false;
  do {
    EdgeSet mapped;
    mapped.reserve(edges.size());
    for (auto [a, b] : edges) {
      int x = perm[static_cast<std::size_t>(a - 1)];
      int y = perm[static_cast<std::size_t>(b - 1)];
      if (x > y) std::swap(x, y);
      mapped.emplace_back(x, y);
    }
    std::sort(mapped.begin(), mapped.end());
    if (!have || mapped < best) {
      best = std::move(mapped);
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double inv_power(int n, int k) { return std::pow(static_cast<double>(n), -k); }

// p^k with the convention that terms with zero multiplicity never reach here.
double ppow(double p, int k) { return std::pow(p, k); }

}  // namespace

double v_tilde_edge_coefficient(int n, double p, TildeVariant variant) {
  return variant == TildeVariant::Approximate ? 2.0 * n * p : 2.0 * (n - 2) * p;
}

double t_tilde_edge_coefficient(int n, double p, TildeVariant variant) {
  return variant == TildeVariant::Approximate ? n * p * p : (n - 2) * p * p;
}

TildeStats tilde_stats(const Graph& g, double p, TildeVariant variant) {
  require_probability(p);
  const int n = g.n();
  const double e = static_cast<double>(g.num_edges());
  const double v = n >= 3 ? static_cast<double>(copy_count(Motif::two_star(), g)) : 0.0;
  const double t = n >= 3 ? static_cast<double>(copy_count(Motif::triangle(), g)) : 0.0;
  TildeStats s;
  s.variant = variant;
  s.e_tilde = e - static_cast<double>(pair_count(n)) * p;
  const double ev = n >= 3 ? expected_copies(Motif::two_star(), n, p) : 0.0;
  const double et = n >= 3 ? expected_copies(Motif::triangle(), n, p) : 0.0;
  s.v_tilde = v - ev - v_tilde_edge_coefficient(n, p, variant) * s.e_tilde;
  s.t_tilde = t - et - p * s.v_tilde - t_tilde_edge_coefficient(n, p, variant) * s.e_tilde;
  return s;
}

double centered_copy_count(const Motif& h, const Graph& g, double p) {
  require_probability(p);
  if (h.vertices() > g.n()) throw std::domain_error("motif has more vertices than the graph");
  const int n = g.n();
  switch (h.shape()) {
    case Motif::Shape::Edge: return static_cast<double>(g.num_edges()) - static_cast<double>(pair_count(n)) * p;
    case Motif::Shape::TwoStar: {
      // per centre c: sum over neighbour pairs u < w of (Z_cu - p)(Z_cw - p)
      double total = 0.0;
      const double q = 1.0 - p;
      for (int d : g.degrees()) {
        const double sum = d - (n - 1) * p;
        const double sq = d * q * q + (n - 1 - d) * p * p;
        total += 0.5 * (sum * sum - sq);
      }
      return total;
    }
    default: break;
  }
  CenteredSum cs(h, g, p);
  return cs.run() / static_cast<double>(h.automorphisms());
}

std::vector<SubgraphClass> subgraph_classes(const Motif& h) {
  if (h.vertices() > 6) throw std::invalid_argument("subgraph enumeration limited to motifs with <= 6 vertices");
  const auto& edges = h.edge_list();
  const auto e = edges.size();
  std::map<std::pair<int, EdgeSet>, std::uint64_t> classes;  // (v, canonical edges) -> #edge subsets
  for (std::uint32_t mask = 1; mask < (1U << e); ++mask) {
    std::vector<int> relabel(static_cast<std::size_t>(h.vertices()) + 1, 0);
    int k = 0;
    EdgeSet sub;
    for (std::size_t x = 0; x < e; ++x) {
      if (!((mask >> x) & 1U)) continue;
      auto [a, b] = edges[x];
      if (relabel[static_cast<std::size_t>(a)] == 0) relabel[static_cast<std::size_t>(a)] = ++k;
      if (relabel[static_cast<std::size_t>(b)] == 0) relabel[static_cast<std::size_t>(b)] = ++k;
      sub.emplace_back(relabel[static_cast<std::size_t>(a)], relabel[static_cast<std::size_t>(b)]);
    }
    ++classes[{k, canonical_form(k, sub)}];
  }
  std::vector<SubgraphClass> out;
  for (auto& [key, subsets] : classes) {
    Motif m(key.first, key.second);
    const std::uint64_t hom = subsets * m.automorphisms();
    out.push_back({std::move(m), hom});
  }
  std::stable_sort(out.begin(), out.end(), [](const SubgraphClass& x, const SubgraphClass& y) {
    if (x.subgraph.vertices() != y.subgraph.vertices()) return x.subgraph.vertices() < y.subgraph.vertices();
    return x.subgraph.edges() < y.subgraph.edges();
  });
  return out;
}

Decomposition full_decomposition(const Motif& h, const Graph& g, double p) {
  require_probability(p);
  const int n = g.n();
  Decomposition d;
  d.expected_hom = expected_hom(h, n, p);
  d.hom = static_cast<double>(hom_count(h, g));
  d.reconstructed = d.expected_hom;
  for (auto& cls : subgraph_classes(h)) {
    DecompositionTerm t{cls.subgraph, 0.0, 0.0};
    t.coefficient = falling_factorial(n - cls.subgraph.vertices(), h.vertices() - cls.subgraph.vertices()) *
                    ppow(p, h.edges() - cls.subgraph.edges()) * static_cast<double>(cls.hom_into_host);
    t.centered_count = centered_copy_count(cls.subgraph, g, p);
    d.reconstructed += t.coefficient * t.centered_count;
    d.terms.push_back(std::move(t));
  }
  d.relative_residual = std::abs(d.reconstructed - d.hom) / std::max(1.0, std::abs(d.hom));
  return d;
}

double remainder(const ErgmSpec& spec, const Graph& g, double p, std::size_t term, TildeVariant variant) {
  const Motif& h = spec[term].motif;
  const int n = g.n();
  const TildeStats ts = tilde_stats(g, p, variant);
  double r = static_cast<double>(hom_count(h, g)) * inv_power(n, h.vertices() - 3);
  if (h.triangles() > 0) r -= 6.0 * h.triangles() * ppow(p, h.edges() - 3) * ts.t_tilde;
  if (h.two_stars() > 0) r -= 2.0 * h.two_stars() * ppow(p, h.edges() - 2) * ts.v_tilde;
  r -= 2.0 * n * h.edges() * ppow(p, h.edges() - 1) * ts.e_tilde;
  return r;
}

double delta_remainder(const ErgmSpec& spec, const Graph& g, double p, std::size_t term, EdgeIndex s,
                       TildeVariant variant) {
  Graph with = g;
  with.set_edge(s, true);
  Graph without = g;
  without.set_edge(s, false);
  return remainder(spec, with, p, term, variant) - remainder(spec, without, p, term, variant);
}

double delta_remainder_fast(const ErgmSpec& spec, const Graph& g, double p, std::size_t term, EdgeIndex s,
                            TildeVariant variant) {
  const Motif& h = spec[term].motif;
  const int n = g.n();
  double r = static_cast<double>(delta_hom(h, g, s)) * inv_power(n, h.vertices() - 3);
  const int off = g.has_edge(s) ? 1 : 0;
  const double dv = (g.degree(s.i) - off + g.degree(s.j) - off) - v_tilde_edge_coefficient(n, p, variant);
  if (h.triangles() > 0) {
    const double dt = g.codegree(s.i, s.j) - p * dv - t_tilde_edge_coefficient(n, p, variant);
    r -= 6.0 * h.triangles() * ppow(p, h.edges() - 3) * dt;
  }
  if (h.two_stars() > 0) r -= 2.0 * h.two_stars() * ppow(p, h.edges() - 2) * dv;
  r -= 2.0 * n * h.edges() * ppow(p, h.edges() - 1);
  return r;
}

RemainderParts remainder_parts(const ErgmSpec& spec, const Graph& g, double p, std::size_t term,
                               TildeVariant variant) {
  const Motif& h = spec[term].motif;
  const int n = g.n();
  const int v = h.vertices();
  const int e = h.edges();
  const double scale = inv_power(n, v - 3);
  const TildeStats exact = tilde_stats(g, p, TildeVariant::Exact);
  const TildeStats chosen = tilde_stats(g, p, variant);

  RemainderParts parts;
  parts.constant = expected_hom(h, n, p) * scale;
  if (v >= 4) {
    for (auto& cls : subgraph_classes(h)) {
      if (cls.subgraph.vertices() < 4) continue;
      const double coef = falling_factorial(n - cls.subgraph.vertices(), v - cls.subgraph.vertices()) *
                          ppow(p, e - cls.subgraph.edges()) * static_cast<double>(cls.hom_into_host);
      parts.higher += coef * scale * centered_copy_count(cls.subgraph, g, p);
    }
  }
  const double s_coef = h.two_stars() > 0 ? 2.0 * h.two_stars() * ppow(p, e - 2) : 0.0;
  const double t_coef = h.triangles() > 0 ? 6.0 * h.triangles() * ppow(p, e - 3) : 0.0;
  if (v >= 3) {
    const double bracket = falling_factorial(n - 3, v - 3) * scale - 1.0;
    parts.three = bracket * (s_coef * exact.v_tilde + t_coef * exact.t_tilde);
  }
  const double bracket2 = falling_factorial(n - 2, v - 2) * scale - n;
  parts.two = bracket2 * 2.0 * e * ppow(p, e - 1) * exact.e_tilde;
  parts.variant = -(s_coef * (chosen.v_tilde - exact.v_tilde) + t_coef * (chosen.t_tilde - exact.t_tilde));
  return parts;
}

}  // namespace ergm

namespace ergm {

namespace {

void require_small(int n) {
  if (pair_count(n) > 20) throw std::invalid_argument("exhaustive check limited to n <= 6");
}

double gnp_weight(std::uint64_t mask, std::size_t pairs, double p) {
  const int k = std::popcount(mask);
  return std::pow(p, k) * std::pow(1.0 - p, static_cast<int>(pairs) - k);
}

}  // namespace

double max_reconstruction_residual(const Motif& h, int n, double p) {
  require_small(n);
  double worst = 0.0;
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  for (std::uint64_t m = 0; m < total; ++m)
    worst = std::max(worst, full_decomposition(h, Graph::from_mask(n, m), p).relative_residual);
  return worst;
}

double centered_count_mean(const Motif& h, int n, double p) {
  require_small(n);
  const std::size_t pairs = pair_count(n);
  double mean = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m)
    mean += gnp_weight(m, pairs, p) * centered_copy_count(h, Graph::from_mask(n, m), p);
  return mean;
}

double edge_tilde_variance(int n, double p) {
  require_small(n);
  const std::size_t pairs = pair_count(n);
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m) {
    const double w = gnp_weight(m, pairs, p);
    const double e = std::popcount(m) - static_cast<double>(pairs) * p;
    m1 += w * e;
    m2 += w * e * e;
  }
  return m2 - m1 * m1;
}

OrthogonalityResult orthogonality_check(int n, double p) {
  const std::size_t pairs = pair_count(n);
  if (pairs > 10) throw std::invalid_argument("orthogonality check limited to N <= 10 pairs");
  const std::uint64_t graphs = std::uint64_t{1} << pairs;
  const std::uint64_t subsets = graphs;  // subsets of pairs, same bit layout
  std::vector<double> weight(graphs);
  for (std::uint64_t m = 0; m < graphs; ++m) weight[m] = gnp_weight(m, pairs, p);
  // f[A][x] = prod_{l in A} (x_l - p)
  std::vector<double> f(subsets * graphs);
  for (std::uint64_t a = 1; a < subsets; ++a)
    for (std::uint64_t x = 0; x < graphs; ++x) {
      double v = 1.0;
      for (std::size_t l = 0; l < pairs; ++l)
        if ((a >> l) & 1U) v *= static_cast<double>((x >> l) & 1U) - p;
      f[a * graphs + x] = v;
    }
  OrthogonalityResult r;
  r.subsets = subsets - 1;
  std::vector<double> mean(subsets, 0.0);
  for (std::uint64_t a = 1; a < subsets; ++a) {
    for (std::uint64_t x = 0; x < graphs; ++x) mean[a] += weight[x] * f[a * graphs + x];
    r.max_abs_mean = std::max(r.max_abs_mean, std::abs(mean[a]));
  }
  for (std::uint64_t a = 1; a < subsets; ++a)
    for (std::uint64_t b = a + 1; b < subsets; ++b) {
      double e = 0.0;
      for (std::uint64_t x = 0; x < graphs; ++x) e += weight[x] * f[a * graphs + x] * f[b * graphs + x];
      r.max_abs_covariance = std::max(r.max_abs_covariance, std::abs(e - mean[a] * mean[b]));
    }
  return r;
}

RemainderVariance remainder_variance_mc(const ErgmSpec& spec, std::size_t term, int n, double p, int samples,
                                        std::uint64_t seed, TildeVariant variant) {
  if (samples < 2) throw std::invalid_argument("need at least two samples for a variance");
  const Motif& h = spec[term].motif;
  Rng rng(seed);
  double s1 = 0.0, q1 = 0.0, s2 = 0.0, q2 = 0.0;
  for (int k = 0; k < samples; ++k) {
    Graph g(n);
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        if (rng.uniform() < p) g.set_edge({a, b}, true);
    const double e_tilde = static_cast<double>(g.num_edges()) - static_cast<double>(pair_count(n)) * p;
    const double first = static_cast<double>(hom_count(h, g)) * inv_power(n, h.vertices() - 3) -
                         2.0 * n * h.edges() * ppow(p, h.edges() - 1) * e_tilde;
    const double second = remainder(spec, g, p, term, variant);
    s1 += first;
    q1 += first * first;
    s2 += second;
    q2 += second * second;
  }
  const double m = samples;
  RemainderVariance r;
  r.n = n;
  r.var_first = (q1 - s1 * s1 / m) / (m - 1);
  r.var_second = (q2 - s2 * s2 / m) / (m - 1);
  return r;
}

}  // namespace ergm
