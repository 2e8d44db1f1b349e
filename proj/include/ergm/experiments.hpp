#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergm/ergm_spec.hpp"
#include "ergm/fixed_point.hpp"
#include "ergm/hoeffding.hpp"
#include "ergm/model.hpp"
#include "ergm/sampler.hpp"
#include "ergm/testfn.hpp"

namespace ergm {

/// Everything an experiment run depends on. Together with the code version
/// it determines every output byte.
struct ExperimentConfig {
  std::string experiment = "sharpness";
  /// Empty means the built-in rectangle spec (beta_1, beta_2) = (-0.08, 0.16).
  std::string spec_path;
  ErgmSpec spec = ErgmSpec::rectangle(-0.08, 0.16);
  std::vector<int> n_grid;
  std::uint64_t master_seed = 20240917;
  int chains = 8;
  int burn_in = 200;
  int sweeps = 2000;
  int thin = 1;
  ScanOrder scan = ScanOrder::Systematic;
  /// sharpness: models whose E h_n is estimated; marginals, remainders: the
  /// sampled model (first entry).
  std::vector<std::string> models;
  /// scaling: the model compared against the exact one for D2.
  std::string second_model = "second";
  /// scaling: "exact" takes E h_n(Z) by quadrature, "chain" samples Z with
  /// the same random numbers as X.
  std::string first_reference = "exact";
  double M = 200.0;
  int quad_nodes = 64;
  int tracked_pairs = 64;
  /// 1-based spec term whose remainder is tracked; 0 means the last term.
  std::size_t term = 0;
  std::vector<double> probabilities{0.3, 0.5};
  int exact_n = 5;
  int orthogonality_n = 4;
  int mc_samples = 2000;
  /// Worker threads; 0 means hardware concurrency. Never changes output.
  int threads = 0;
  /// Output prefix: writes <output>.csv and <output>.manifest.json.
  std::string output;
};

/// Defaults per experiment (n grid, models).
ExperimentConfig default_config(const std::string& experiment);
/// Overrides fields present in j. Loads the spec when spec_path is set.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);
/// Throws std::invalid_argument on an unusable config.
void validate(const ExperimentConfig& cfg);

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Sample mean and standard error of the mean (sd / sqrt(count)).
Estimate mean_and_stderr(std::span<const double> values);

/// Ordinary least squares slope of log y on log x.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Runs fn(0..count-1) on a worker pool. Each index is handled exactly once;
/// callers write results into per-index slots.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Seed of chain `chain` at size n. Shared by every model at that point, so
/// paired chains consume identical uniforms.
std::uint64_t chain_seed(std::uint64_t master, int n, int chain);

/// Fixed point of the spec; throws std::runtime_error unless the spec is
/// subcritical and in the Dobrushin region.
FixedPointReport require_dobrushin(const ErgmSpec& spec);

struct SharpnessPoint {
  int n = 0;
  double er_expectation = 0.0;  // E h_n(Z), quadrature
  double diff_norm = 0.0;       // ||Delta h_n||
  std::map<std::string, Estimate> hn;
  Estimate phi_dispersion;      // under the first sampled model
  /// Ê h_n(model) - E h_n(Z) for the first sampled model.
  Estimate gap;
};

struct SharpnessReport {
  FixedPointReport fixed_point;
  TwoStarRewriteModel rewrite;
  SharpnessConstants constants;
  SharpnessParams params;
  std::vector<SharpnessPoint> points;
};

struct ScalingPoint {
  int n = 0;
  double er_expectation = 0.0;
  double diff_norm = 0.0;
  Estimate exact;
  Estimate first;
  Estimate second;
  Estimate d1;  // |Ê h_n(X) - E h_n(Z)|
  Estimate d2;  // |Ê h_n(X) - Ê h_n(Y)|
  double d1_over_n32 = 0.0;  // D1 / (||Delta h_n|| n^{3/2})
  double d1_over_n = 0.0;
  double d2_over_n32 = 0.0;
  double d2_over_n = 0.0;    // D2 / (||Delta h_n|| n)
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double d1_slope = 0.0;
  double d2_slope = 0.0;
  bool unstable = false;
  std::vector<std::string> warnings;
};

struct MarginalPoint {
  int n = 0;
  double max_dev = 0.0;    // max_l |Ê Y_l - p| (Rao-Blackwellised)
  double mean_dev = 0.0;
  double max_stderr = 0.0; // largest per-pair standard error
  double max_dev_indicator = 0.0;  // same from raw indicators
  Estimate density;        // Ê E / N
};

struct MarginalReport {
  double p = 0.0;
  std::string model;
  std::vector<MarginalPoint> points;
  double slope = 0.0;
  /// max / min of n * max_dev across the grid.
  double scaled_spread = 0.0;
};

struct RemainderPoint {
  int n = 0;
  Estimate abs_delta;  // Ê |Delta_s R_i(Y)|
};

struct RemainderReport {
  std::size_t term = 0;
  std::string model;
  std::vector<RemainderPoint> points;
  /// max over consecutive grid points of value(n_{k+1}) / value(n_k).
  double max_growth = 0.0;
};

struct DecompositionReport {
  /// motif name -> p -> max relative residual over all graphs on exact_n.
  std::map<std::string, std::map<double, double>> residuals;
  double max_residual = 0.0;
  OrthogonalityResult orthogonality;
  double max_centered_mean = 0.0;
  /// (n, Var(E~) by enumeration, N p (1-p))
  std::vector<std::array<double, 3>> edge_variance;
  std::vector<RemainderVariance> variance;
  bool ratio_decreasing = false;
};

SharpnessReport experiment_sharpness(const ExperimentConfig& cfg);
ScalingReport experiment_scaling(const ExperimentConfig& cfg);
MarginalReport experiment_marginals(const ExperimentConfig& cfg);
RemainderReport experiment_remainders(const ExperimentConfig& cfg);
DecompositionReport experiment_decomposition(const ExperimentConfig& cfg);

nlohmann::json to_json(const SharpnessReport& r);
nlohmann::json to_json(const ScalingReport& r);
nlohmann::json to_json(const MarginalReport& r);
nlohmann::json to_json(const RemainderReport& r);
nlohmann::json to_json(const DecompositionReport& r);

/// One CSV line: experiment,n,model,stat,estimate,stderr,seed,sweeps.
struct ResultRow {
  std::string experiment;
  int n = 0;
  std::string model;
  std::string stat;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t seed = 0;
  int sweeps = 0;
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  nlohmann::json summary;
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, std::span<const ResultRow> rows);
nlohmann::json manifest(const ExperimentConfig& cfg, const ExperimentOutput& out);
/// Writes <prefix>.csv and <prefix>.manifest.json.
void write_outputs(const std::string& prefix, const ExperimentConfig& cfg, const ExperimentOutput& out);

}  // namespace ergm
