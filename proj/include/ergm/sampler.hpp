#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/hoeffding.hpp"
#include "ergm/model.hpp"
#include "ergm/rng.hpp"

namespace ergm {

enum class ScanOrder { Systematic, Random };

struct ChainConfig {
  std::uint64_t seed = 1;
  int burn_in_sweeps = 200;
  int sample_sweeps = 1000;
  /// Sweeps between recorded samples.
  int thin = 1;
  ScanOrder scan = ScanOrder::Systematic;
  /// Initial G(n, p) density; falls back to the model's reference p, and to
  /// the empty graph when neither is available.
  std::optional<double> init_p;
};

/// Throws std::invalid_argument for negative sweep counts or thin < 1.
void validate(const ChainConfig& cfg);

double logistic(double x);

/// Heat-bath update of pair s: present iff u < sigma(delta log-weight).
/// Returns the new state of s.
bool glauber_step(Graph& g, const Model& model, EdgeIndex s, double u);

/// G(n, p) drawn pair by pair in row-major order.
Graph random_graph(int n, double p, Rng& rng);

/// Runs burn-in and then calls on_sample every `thin` sweeps. One sweep is N
/// single-pair updates; a systematic sweep visits pairs in row-major order,
/// a random sweep draws N pairs uniformly with replacement.
void run_chain(const Model& model, int n, const ChainConfig& cfg,
               const std::function<void(const Graph&, std::size_t)>& on_sample);

/// Appends one value per column for each recorded sample.
class Collector {
 public:
  virtual ~Collector() = default;
  virtual std::vector<std::string> columns() const = 0;
  virtual void record(const Graph& g, std::vector<double>& row) = 0;
  /// Smallest n the collector can evaluate.
  virtual int min_vertices() const { return 1; }
};

/// Edge (E), two-star (V), triangle (T) and rectangle (R) copy counts.
class CountCollector final : public Collector {
 public:
  explicit CountCollector(std::vector<std::string> stats = {"E", "V", "T", "R"});
  std::vector<std::string> columns() const override { return stats_; }
  void record(const Graph& g, std::vector<double>& row) override;
  int min_vertices() const override;

 private:
  std::vector<std::string> stats_;
};

class DegreeCollector final : public Collector {
 public:
  explicit DegreeCollector(int n) : n_(n) {}
  std::vector<std::string> columns() const override;
  void record(const Graph& g, std::vector<double>& row) override;

 private:
  int n_;
};

/// h(g) = sum_i table[d_i(g)], used for the sharpness test function.
class DegreeSumCollector final : public Collector {
 public:
  DegreeSumCollector(std::string name, std::vector<double> table) : name_(std::move(name)), table_(std::move(table)) {}
  std::vector<std::string> columns() const override { return {name_}; }
  void record(const Graph& g, std::vector<double>& row) override;

 private:
  std::string name_;
  std::vector<double> table_;
};

/// Per tracked pair l: the indicator Y_l (column y_i_j) and its conditional
/// probability given the rest of the graph under the model (q_i_j). The
/// latter is the Rao-Blackwellised marginal estimator.
class MarginalCollector final : public Collector {
 public:
  MarginalCollector(const Model& model, std::vector<EdgeIndex> tracked)
      : model_(model), tracked_(std::move(tracked)) {}
  std::vector<std::string> columns() const override;
  void record(const Graph& g, std::vector<double>& row) override;
  int min_vertices() const override { return model_.max_motif_vertices(); }

 private:
  const Model& model_;
  std::vector<EdgeIndex> tracked_;
};

/// Mean over tracked pairs of |Delta_s R_i(g)| for one spec term.
class DeltaRemainderCollector final : public Collector {
 public:
  DeltaRemainderCollector(const ErgmSpec& spec, double p, std::size_t term, std::vector<EdgeIndex> tracked,
                          TildeVariant variant = TildeVariant::Approximate)
      : spec_(spec), p_(p), term_(term), tracked_(std::move(tracked)), variant_(variant) {}
  std::vector<std::string> columns() const override { return {"abs_dR"}; }
  void record(const Graph& g, std::vector<double>& row) override;
  int min_vertices() const override { return spec_[term_].motif.vertices(); }

 private:
  const ErgmSpec& spec_;
  double p_;
  std::size_t term_;
  std::vector<EdgeIndex> tracked_;
  TildeVariant variant_;
};

/// Row-major table of recorded samples.
struct SampleTable {
  std::vector<std::string> columns;
  std::vector<double> values;
  std::size_t rows = 0;

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  double at(std::size_t row, std::size_t col) const { return values[row * columns.size() + col]; }
  double mean(const std::string& name) const;
};

/// Runs a chain and records every collector's columns at each sample. Throws
/// std::invalid_argument when a collector (or the model) needs more vertices
/// than n.
SampleTable run_chain(const Model& model, int n, const ChainConfig& cfg, std::span<Collector* const> collectors);

/// `count` distinct pairs drawn uniformly (sorted by position).
std::vector<EdgeIndex> sample_pairs(int n, std::size_t count, Rng& rng);

/// Named graph statistic for the enumeration oracle.
struct Statistic {
  std::string name;
  std::function<double(const Graph&)> fn;
};

/// E, V, T (triangles) or R (rectangles).
Statistic standard_statistic(const std::string& name);

struct EnumerationResult {
  int n = 0;
  double log_Z = 0.0;
  std::map<std::string, double> expectations;
  /// Probability of the graph whose row-major pair mask is the index.
  std::vector<double> probabilities;

  double probability(const Graph& g) const { return probabilities[g.mask()]; }
  /// P(s present | all other pairs as in g).
  double conditional(const Graph& g, EdgeIndex s) const;
};

inline constexpr int kEnumerationDefaultMaxN = 6;
inline constexpr int kEnumerationHardMaxN = 7;

/// Exact law of the model over all 2^N graphs on n vertices. log_Z is the log
/// of the sum of exp(log_weight), so it carries whatever constant log_weight
/// drops.
EnumerationResult enumerate(const Model& model, int n, const std::vector<Statistic>& statistics,
                            int max_n = kEnumerationDefaultMaxN);

}  // namespace ergm
