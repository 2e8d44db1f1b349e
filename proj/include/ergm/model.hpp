#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ergm/ergm_spec.hpp"
#include "ergm/graph.hpp"

namespace ergm {

/// The ERGM itself: n^2 sum_i beta_i t(H_i, G).
struct ExactModel {};

/// G(n, p).
struct FirstOrderModel {
  double p = 0.5;
};

/// Triangle and two-star tilt of G(n, p):
/// (6 c_T / n) T~ + (2 c_V / n) V~ + E log(p / (1 - p)), with the
/// approximate tilde statistics.
struct SecondOrderModel {
  double p = 0.5;
  double c_triangle = 0.0;  // sum_i beta_i t_i p^(e_i - 3)
  double c_two_star = 0.0;  // sum_i beta_i s_i p^(e_i - 2)
};

/// Two-star ERGM (2 beta2~ / n) V + 2 beta1~ E.
struct TwoStarRewriteModel {
  double beta1_tilde = 0.0;
  double beta2_tilde = 0.0;
};

using ModelKind = std::variant<ExactModel, FirstOrderModel, SecondOrderModel, TwoStarRewriteModel>;

SecondOrderModel second_order(const ErgmSpec& spec, double p);

/// Rewrites the second-order model as a two-star ERGM. Only defined when the
/// triangle coefficient vanishes; throws std::invalid_argument otherwise.
/// For the rectangle spec this gives beta2~ = 4 beta_2 p^2 and
/// beta1~ = -8 beta_2 p^3 + log(p / (1 - p)) / 2.
TwoStarRewriteModel two_star_rewrite(const ErgmSpec& spec, double p);

/// Builds the model named by a CLI token (exact | first | second | two-star)
/// at fixed point p.
ModelKind model_from_name(std::string_view name, const ErgmSpec& spec, double p);
std::string model_name(const ModelKind& m);

/// Unnormalized log-probability; constants independent of g are dropped.
double log_weight(const ModelKind& model, const ErgmSpec& spec, const Graph& g);

/// log_weight(g + s) - log_weight(g - s), computed incrementally.
double delta_log_weight(const ModelKind& model, const ErgmSpec& spec, const Graph& g, EdgeIndex s);

/// A model bound to its spec, which is what the samplers consume.
class Model {
 public:
  Model(ModelKind kind, ErgmSpec spec) : kind_(std::move(kind)), spec_(std::move(spec)) {}

  double log_weight(const Graph& g) const { return ergm::log_weight(kind_, spec_, g); }
  double delta_log_weight(const Graph& g, EdgeIndex s) const { return ergm::delta_log_weight(kind_, spec_, g, s); }

  const ModelKind& kind() const { return kind_; }
  const ErgmSpec& spec() const { return spec_; }
  std::string name() const { return model_name(kind_); }
  /// Edge probability of the reference G(n, p), when the model carries one.
  std::optional<double> reference_p() const;
  /// Largest motif the model evaluates; chains need n at least this large.
  int max_motif_vertices() const;

 private:
  ModelKind kind_;
  ErgmSpec spec_;
};

}  // namespace ergm
