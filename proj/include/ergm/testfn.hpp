#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ergm/graph.hpp"

namespace ergm {

/// Nodes and weights for E[f(W)], W ~ N(0, 1): E[f(W)] ~ sum_k w_k f(x_k).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Golub-Welsch on the Jacobi matrix of the probabilists' Hermite
  /// polynomials.
  static GaussHermite make(int count);
};

/// Parameters of the degree-fluctuation test function
///   h_n(G) = sum_i E_W min((2 d_i/(n-1) - 2p + W_i/sigma)^2, M/n),
/// with sigma = sqrt(n beta2~ / 2).
struct SharpnessParams {
  double p = 0.5;
  double beta2_tilde = 0.16;
  double M = 200.0;
  int quadrature_nodes = 64;
};

void validate(const SharpnessParams& params);

/// Per-vertex term of h_n at degree d (Gauss-Hermite in W).
double g_vertex(int d, int n, const SharpnessParams& params);
/// The same term in closed form via the normal cdf/pdf.
double g_vertex_closed_form(int d, int n, const SharpnessParams& params);

/// g_vertex for d = 0..n-1.
std::vector<double> g_vertex_table(int n, const SharpnessParams& params);

/// h_n(g) = sum_i table[d_i(g)].
double hn_value(const Graph& g, std::span<const double> table);

/// ||Delta h_n|| = 2 max_d |g(d+1) - g(d)|: toggling a pair moves exactly two
/// degrees by one.
double bounded_diff_norm_hn(int n, const SharpnessParams& params);

/// E h_n(Z) for Z ~ G(n, p): n sum_d Bin(n-1, p)(d) g(d).
double expect_hn_under_er(int n, const SharpnessParams& params);

/// Largest |Delta_s h(x)| seen over `trials` draws of (x, s), with x ~ G(n, q)
/// for q uniform on [0, 1]. A lower bound on ||Delta h||.
double black_box_delta_norm(const std::function<double(const Graph&)>& h, int n, int trials, std::uint64_t seed);

struct SharpnessConstants {
  double theta_tilde = 0.0;  // beta2~ / 2
  double t_tilde = 0.0;      // 2p - 1
  double a1_tilde = 0.0;     // theta~ - theta~^2 (1 - t~^2)
  double target = 0.0;       // 1 / a1~
  double er_bound = 0.0;     // 4p(1-p) + 2/beta2~
};

SharpnessConstants sharpness_constants(double p, double beta2_tilde);

/// W-averaged sum_i (phi_i - t~)^2 with phi_i = 2 d_i/(n-1) - 1 + W_i/sqrt((n-1) theta),
/// theta = beta2~ (n-1)/(2n), and t~ = 2p - 1 in place of the unspecified
/// finite-n centring, so it carries an O(1/n) bias.
double phi_dispersion(const Graph& g, double p, double beta2_tilde);

}  // namespace ergm
