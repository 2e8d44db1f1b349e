#include "ergm/testfn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "ergm/rng.hpp"

namespace ergm {

namespace {

const GaussHermite& cached_rule(int count) {
  static std::mutex mu;
  static std::map<int, GaussHermite> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(count);
  if (it == cache.end()) it = cache.emplace(count, GaussHermite::make(count)).first;
  return it->second;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double centre(int d, int n, double p) { return 2.0 * d / (n - 1) - 2.0 * p; }

}  // namespace

GaussHermite GaussHermite::make(int count) {
  if (count < 1) throw std::invalid_argument("quadrature needs at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    jacobi(k, k - 1) = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermite rule;
  rule.nodes.resize(static_cast<std::size_t>(count));
  rule.weights.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[static_cast<std::size_t>(k)] = v0 * v0;
  }
  return rule;
}

void validate(const SharpnessParams& params) {
  if (!(params.p > 0.0 && params.p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  if (!(params.beta2_tilde > 0.0)) throw std::invalid_argument("beta2~ must be positive");
  if (!(params.M >= 0.0)) throw std::invalid_argument("truncation M must be non-negative");
  if (params.quadrature_nodes < 1) throw std::invalid_argument("quadrature needs at least one node");
}

double g_vertex(int d, int n, const SharpnessParams& params) {
  validate(params);
  if (d < 0 || d > n - 1) throw std::out_of_range("degree outside [0, n-1]");
  const double cap = params.M / n;
  const double sigma = std::sqrt(n * params.beta2_tilde / 2.0);
  const double c = centre(d, n, params.p);
  const GaussHermite& rule = cached_rule(params.quadrature_nodes);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = c + rule.nodes[k] / sigma;
    s += rule.weights[k] * std::min(x * x, cap);
  }
  return s;
}

double g_vertex_closed_form(int d, int n, const SharpnessParams& params) {
  validate(params);
  const double cap = params.M / n;
  const double sigma = std::sqrt(n * params.beta2_tilde / 2.0);
  const double c = centre(d, n, params.p);
  const double r = std::sqrt(cap);
  // (c + W/sigma)^2 <= cap  <=>  W in [lo, hi]
  const double lo = sigma * (-r - c);
  const double hi = sigma * (r - c);
  const double mass = normal_cdf(hi) - normal_cdf(lo);
  // E[W 1{lo<W<hi}] = pdf(lo) - pdf(hi); E[W^2 1{...}] = mass + lo pdf(lo) - hi pdf(hi)
  const double m1 = normal_pdf(lo) - normal_pdf(hi);
  const double m2 = mass + lo * normal_pdf(lo) - hi * normal_pdf(hi);
  const double inside = c * c * mass + 2.0 * c * m1 / sigma + m2 / (sigma * sigma);
  return inside + cap * (1.0 - mass);
}

std::vector<double> g_vertex_table(int n, const SharpnessParams& params) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) t[static_cast<std::size_t>(d)] = g_vertex(d, n, params);
  return t;
}

double hn_value(const Graph& g, std::span<const double> table) {
  double h = 0.0;
  for (int d : g.degrees()) h += table[static_cast<std::size_t>(d)];
  return h;
}

double bounded_diff_norm_hn(int n, const SharpnessParams& params) {
  const auto t = g_vertex_table(n, params);
  double m = 0.0;
  for (std::size_t d = 0; d + 1 < t.size(); ++d) m = std::max(m, std::abs(t[d + 1] - t[d]));
  return 2.0 * m;
}

double expect_hn_under_er(int n, const SharpnessParams& params) {
  const auto t = g_vertex_table(n, params);
  const int m = n - 1;
  const double lp = std::log(params.p);
  const double lq = std::log1p(-params.p);
  double s = 0.0;
  for (int d = 0; d <= m; ++d) {
    const double log_pmf =
        std::lgamma(m + 1.0) - std::lgamma(d + 1.0) - std::lgamma(m - d + 1.0) + d * lp + (m - d) * lq;
    s += std::exp(log_pmf) * t[static_cast<std::size_t>(d)];
  }
  return n * s;
}

double black_box_delta_norm(const std::function<double(const Graph&)>& h, int n, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (n < 2) throw std::invalid_argument("need at least one pair");
  Rng rng(seed);
  double best = 0.0;
  for (int k = 0; k < trials; ++k) {
    const double q = rng.uniform();
    Graph g(n);
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        if (rng.uniform() < q) g.set_edge({a, b}, true);
    const EdgeIndex s = edge_at(n, rng.below(pair_count(n)));
    g.set_edge(s, true);
    const double on = h(g);
    g.set_edge(s, false);
    best = std::max(best, std::abs(on - h(g)));
  }
  return best;
}

SharpnessConstants sharpness_constants(double p, double beta2_tilde) {
  SharpnessConstants c;
  c.theta_tilde = beta2_tilde / 2.0;
  c.t_tilde = 2.0 * p - 1.0;
  c.a1_tilde = c.theta_tilde - c.theta_tilde * c.theta_tilde * (1.0 - c.t_tilde * c.t_tilde);
  c.target = 1.0 / c.a1_tilde;
  c.er_bound = 4.0 * p * (1.0 - p) + 2.0 / beta2_tilde;
  return c;
}

double phi_dispersion(const Graph& g, double p, double beta2_tilde) {
  const int n = g.n();
  const double theta = beta2_tilde * (n - 1) / (2.0 * n);
  const double t = 2.0 * p - 1.0;
  double s = 0.0;
  for (int d : g.degrees()) {
    const double x = 2.0 * d / (n - 1) - 1.0 - t;
    s += x * x;
  }
  return s + n / ((n - 1) * theta);
}

}  // namespace ergm
