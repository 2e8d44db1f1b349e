#include "ergm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ergm/motif.hpp"

namespace ergm {

void validate(const ChainConfig& cfg) {
  if (cfg.burn_in_sweeps < 0 || cfg.sample_sweeps < 0) throw std::invalid_argument("sweep counts must be >= 0");
  if (cfg.thin < 1) throw std::invalid_argument("thin must be >= 1");
  if (cfg.init_p && !(*cfg.init_p >= 0.0 && *cfg.init_p <= 1.0))
    throw std::invalid_argument("initial density outside [0, 1]");
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

bool glauber_step(Graph& g, const Model& model, EdgeIndex s, double u) {
  const bool on = u < logistic(model.delta_log_weight(g, s));
  g.set_edge(s, on);
  return on;
}

Graph random_graph(int n, double p, Rng& rng) {
  Graph g(n);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (rng.uniform() < p) g.set_edge({a, b}, true);
  return g;
}

void run_chain(const Model& model, int n, const ChainConfig& cfg,
               const std::function<void(const Graph&, std::size_t)>& on_sample) {
  validate(cfg);
  if (model.max_motif_vertices() > n) throw std::invalid_argument("model motifs need more vertices than n");
  Rng rng(cfg.seed);
  const std::optional<double> p0 = cfg.init_p ? cfg.init_p : model.reference_p();
  Graph g = p0 ? random_graph(n, *p0, rng) : Graph(n);

  std::vector<EdgeIndex> pairs;
  pairs.reserve(pair_count(n));
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) pairs.push_back({a, b});
  const std::size_t npairs = pairs.size();

  const auto sweep = [&] {
    if (cfg.scan == ScanOrder::Systematic) {
      for (const auto& s : pairs) glauber_step(g, model, s, rng.uniform());
    } else {
      for (std::size_t k = 0; k < npairs; ++k) {
        const auto& s = pairs[rng.below(npairs)];
        glauber_step(g, model, s, rng.uniform());
      }
    }
  };

  for (int k = 0; k < cfg.burn_in_sweeps; ++k) sweep();
  std::size_t recorded = 0;
  for (int k = 1; k <= cfg.sample_sweeps; ++k) {
    sweep();
    if (k % cfg.thin == 0) on_sample(g, recorded++);
  }
}

CountCollector::CountCollector(std::vector<std::string> stats) : stats_(std::move(stats)) {
  for (const auto& s : stats_)
    if (s != "E" && s != "V" && s != "T" && s != "R") throw std::invalid_argument("unknown count statistic " + s);
}

int CountCollector::min_vertices() const {
  int v = 2;
  for (const auto& s : stats_) v = std::max(v, s == "E" ? 2 : s == "R" ? 4 : 3);
  return v;
}

void CountCollector::record(const Graph& g, std::vector<double>& row) {
  for (const auto& s : stats_) row.push_back(standard_statistic(s).fn(g));
}

std::vector<std::string> DegreeCollector::columns() const {
  std::vector<std::string> c;
  for (int v = 1; v <= n_; ++v) c.push_back("d" + std::to_string(v));
  return c;
}

void DegreeCollector::record(const Graph& g, std::vector<double>& row) {
  for (int d : g.degrees()) row.push_back(d);
}

void DegreeSumCollector::record(const Graph& g, std::vector<double>& row) {
  double h = 0.0;
  for (int d : g.degrees()) h += table_.at(static_cast<std::size_t>(d));
  row.push_back(h);
}

std::vector<std::string> MarginalCollector::columns() const {
  std::vector<std::string> c;
  for (const auto& s : tracked_) c.push_back("y_" + std::to_string(s.i) + "_" + std::to_string(s.j));
  for (const auto& s : tracked_) c.push_back("q_" + std::to_string(s.i) + "_" + std::to_string(s.j));
  return c;
}

void MarginalCollector::record(const Graph& g, std::vector<double>& row) {
  for (const auto& s : tracked_) row.push_back(g.has_edge(s) ? 1.0 : 0.0);
  for (const auto& s : tracked_) row.push_back(logistic(model_.delta_log_weight(g, s)));
}

void DeltaRemainderCollector::record(const Graph& g, std::vector<double>& row) {
  double sum = 0.0;
  for (const auto& s : tracked_) sum += std::abs(delta_remainder_fast(spec_, g, p_, term_, s, variant_));
  row.push_back(tracked_.empty() ? 0.0 : sum / static_cast<double>(tracked_.size()));
}

std::size_t SampleTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SampleTable::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

double SampleTable::mean(const std::string& name) const {
  const std::size_t c = column_index(name);
  double s = 0.0;
  for (std::size_t r = 0; r < rows; ++r) s += at(r, c);
  return rows == 0 ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(rows);
}

SampleTable run_chain(const Model& model, int n, const ChainConfig& cfg, std::span<Collector* const> collectors) {
  SampleTable table;
  for (Collector* c : collectors) {
    if (c->min_vertices() > n) throw std::invalid_argument("collector needs more vertices than n");
    for (auto& name : c->columns()) table.columns.push_back(std::move(name));
  }
  std::vector<double> row;
  row.reserve(table.columns.size());
  run_chain(model, n, cfg, [&](const Graph& g, std::size_t) {
    row.clear();
    for (Collector* c : collectors) c->record(g, row);
    table.values.insert(table.values.end(), row.begin(), row.end());
    ++table.rows;
  });
  return table;
}

std::vector<EdgeIndex> sample_pairs(int n, std::size_t count, Rng& rng) {
  const std::size_t total = pair_count(n);
  count = std::min(count, total);
  // partial Fisher-Yates over positions
  std::vector<std::size_t> pos(total);
  for (std::size_t k = 0; k < total; ++k) pos[k] = k;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t j = k + rng.below(total - k);
    std::swap(pos[k], pos[j]);
  }
  pos.resize(count);
  std::sort(pos.begin(), pos.end());
  std::vector<EdgeIndex> out;
  out.reserve(count);
  for (std::size_t k : pos) out.push_back(edge_at(n, k));
  return out;
}

Statistic standard_statistic(const std::string& name) {
  if (name == "E") return {name, [](const Graph& g) { return static_cast<double>(g.num_edges()); }};
  if (name == "V")
    return {name, [](const Graph& g) {
              return g.n() < 3 ? 0.0 : static_cast<double>(copy_count(Motif::two_star(), g));
            }};
  if (name == "T")
    return {name, [](const Graph& g) {
              return g.n() < 3 ? 0.0 : static_cast<double>(copy_count(Motif::triangle(), g));
            }};
  if (name == "R")
    return {name, [](const Graph& g) {
              return g.n() < 4 ? 0.0 : static_cast<double>(copy_count(Motif::rectangle(), g));
            }};
  throw std::invalid_argument("unknown statistic " + name);
}

double EnumerationResult::conditional(const Graph& g, EdgeIndex s) const {
  const std::uint64_t bit = std::uint64_t{1} << edge_position(n, s);
  const std::uint64_t m = g.mask();
  const double on = probabilities[m | bit];
  const double off = probabilities[m & ~bit];
  return on / (on + off);
}

EnumerationResult enumerate(const Model& model, int n, const std::vector<Statistic>& statistics, int max_n) {
  if (max_n > kEnumerationHardMaxN) max_n = kEnumerationHardMaxN;
  if (n < 1 || n > max_n) throw std::invalid_argument("enumeration limited to n <= " + std::to_string(max_n));
  const std::size_t total = std::size_t{1} << pair_count(n);
  EnumerationResult r;
  r.n = n;
  r.probabilities.resize(total);
  std::vector<double> stat_values(total * statistics.size());
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < total; ++m) {
    const Graph g = Graph::from_mask(n, m);
    const double lw = model.log_weight(g);
    r.probabilities[m] = lw;
    max_lw = std::max(max_lw, lw);
    for (std::size_t k = 0; k < statistics.size(); ++k) stat_values[m * statistics.size() + k] = statistics[k].fn(g);
  }
  double z = 0.0;
  for (double& lw : r.probabilities) {
    lw = std::exp(lw - max_lw);
    z += lw;
  }
  r.log_Z = max_lw + std::log(z);
  for (double& w : r.probabilities) w /= z;
  for (std::size_t k = 0; k < statistics.size(); ++k) {
    double e = 0.0;
    for (std::size_t m = 0; m < total; ++m) e += r.probabilities[m] * stat_values[m * statistics.size() + k];
    r.expectations[statistics[k].name] = e;
  }
  return r;
}

}  // namespace ergm
