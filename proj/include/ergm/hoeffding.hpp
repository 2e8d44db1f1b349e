#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ergm/ergm_spec.hpp"
#include "ergm/graph.hpp"
#include "ergm/motif.hpp"

namespace ergm {

/// Which coefficients the tilde statistics subtract.
///
/// Approximate uses the large-n forms 2np (for V) and np^2 (for the
/// triangle); Exact uses the falling-factorial forms 2(n-2)p and (n-2)p^2,
/// which make V~ and T~ equal the centered copy counts of the two-star and
/// triangle.
enum class TildeVariant { Approximate, Exact };

struct TildeStats {
  double e_tilde = 0.0;
  double v_tilde = 0.0;
  double t_tilde = 0.0;
  TildeVariant variant = TildeVariant::Approximate;
};

TildeStats tilde_stats(const Graph& g, double p, TildeVariant variant);

/// Coefficient of E~ inside V~ (2np or 2(n-2)p).
double v_tilde_edge_coefficient(int n, double p, TildeVariant variant);
/// Coefficient of E~ inside T~ (np^2 or (n-2)p^2).
double t_tilde_edge_coefficient(int n, double p, TildeVariant variant);

/// Sum over unordered copies of h in K_n of prod over the copy's edges of
/// (Z_r - p). Closed forms for the edge and the two-star; backtracking over
/// injective maps otherwise (O(n^v)).
double centered_copy_count(const Motif& h, const Graph& g, double p);

/// One isomorphism class of non-empty, isolated-vertex-free subgraphs of H.
struct SubgraphClass {
  Motif subgraph;
  /// |hom(G_ij, H)|: injective edge-preserving maps of the subgraph into H.
  std::uint64_t hom_into_host = 0;
};

/// Subgraph classes of h in order of increasing (vertices, edges). Requires
/// h.vertices() <= 6.
std::vector<SubgraphClass> subgraph_classes(const Motif& h);

struct DecompositionTerm {
  Motif subgraph;
  /// (n - v_ij) ... (n - v_i + 1) p^(e_i - e_ij) |hom(G_ij, H_i)|
  double coefficient = 0.0;
  /// Centered copy count of the subgraph in g.
  double centered_count = 0.0;
};

struct Decomposition {
  double expected_hom = 0.0;
  std::vector<DecompositionTerm> terms;
  double hom = 0.0;
  double reconstructed = 0.0;
  /// |reconstructed - hom| / max(1, |hom|)
  double relative_residual = 0.0;
};

/// Hom-form Hoeffding decomposition of |hom(h, g)| under G(n, p):
/// hom = E_p hom + sum_j coefficient_j * centered_count_j.
Decomposition full_decomposition(const Motif& h, const Graph& g, double p);

/// R_i(g) = hom(H_i, g) / n^(v_i - 3) - 6 t_i p^(e_i-3) T~ - 2 s_i p^(e_i-2) V~
///          - 2 n e_i p^(e_i-1) E~,
/// with the tilde statistics taken in the given variant.
double remainder(const ErgmSpec& spec, const Graph& g, double p, std::size_t term,
                 TildeVariant variant = TildeVariant::Approximate);

/// R_i(g + s) - R_i(g - s) by differencing the full statistic.
double delta_remainder(const ErgmSpec& spec, const Graph& g, double p, std::size_t term, EdgeIndex s,
                       TildeVariant variant = TildeVariant::Approximate);

/// Delta_s R_i from the incremental kernels (delta_hom, degrees, codegree);
/// agrees with delta_remainder and is cheap enough for chain collectors.
double delta_remainder_fast(const ErgmSpec& spec, const Graph& g, double p, std::size_t term, EdgeIndex s,
                            TildeVariant variant = TildeVariant::Approximate);

/// R_i split along the full decomposition:
///   higher    = sum over subgraph classes with >= 4 vertices,
///   three     = [falling(n-3, v_i-3)/n^(v_i-3) - 1] (2 s_i p^(e_i-2) V~ + 6 t_i p^(e_i-3) T~),
///   two       = [falling(n-2, v_i-2)/n^(v_i-3) - n] 2 e_i p^(e_i-1) E~,
///   variant   = the gap between the chosen tilde variant and the exact one,
/// with the tilde statistics in `three` taken in the exact variant.
struct RemainderParts {
  double constant = 0.0;
  double higher = 0.0;
  double three = 0.0;
  double two = 0.0;
  double variant = 0.0;
  double total() const { return constant + higher + three + two + variant; }
};

RemainderParts remainder_parts(const ErgmSpec& spec, const Graph& g, double p, std::size_t term,
                               TildeVariant variant = TildeVariant::Approximate);

// Exhaustive and Monte Carlo checks over G(n, p).

/// Largest relative reconstruction residual of full_decomposition over all
/// 2^N graphs on n vertices.
double max_reconstruction_residual(const Motif& h, int n, double p);

/// E_p of the centered copy count, by enumeration of G(n, p).
double centered_count_mean(const Motif& h, int n, double p);

/// Var_p(E~) by enumeration; equals N p (1 - p).
double edge_tilde_variance(int n, double p);

struct OrthogonalityResult {
  double max_abs_covariance = 0.0;  // over distinct non-empty pair subsets A != B
  double max_abs_mean = 0.0;        // |E prod_{l in A} (Z_l - p)|
  std::size_t subsets = 0;
};

/// Covariances of the centered products prod_{l in A} (Z_l - p) under G(n, p),
/// by exact enumeration. Requires N <= 10.
OrthogonalityResult orthogonality_check(int n, double p);

struct RemainderVariance {
  int n = 0;
  /// hom / n^(v-3) - 2 n e p^(e-1) E~ (only the edge term removed)
  double var_first = 0.0;
  /// R_i (edge, two-star and triangle terms removed)
  double var_second = 0.0;
  double ratio() const { return var_second / var_first; }
};

/// Sample variances of the first- and second-order remainders of one spec
/// term over `samples` independent draws of G(n, p).
RemainderVariance remainder_variance_mc(const ErgmSpec& spec, std::size_t term, int n, double p, int samples,
                                        std::uint64_t seed, TildeVariant variant = TildeVariant::Approximate);

}  // namespace ergm
