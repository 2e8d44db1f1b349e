#include "ergm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ergm/io.hpp"

namespace ergm {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTrackedPairsKey = 0x747261636b6564ULL;  // "tracked"

bool uses_chains(const std::string& experiment) { return experiment != "decomposition"; }

std::string scan_name(ScanOrder s) { return s == ScanOrder::Systematic ? "systematic" : "random"; }

ScanOrder parse_scan(const std::string& s) {
  if (s == "systematic") return ScanOrder::Systematic;
  if (s == "random") return ScanOrder::Random;
  throw std::invalid_argument("scan must be systematic or random, got '" + s + "'");
}

ChainConfig chain_config(const ExperimentConfig& cfg, int n, int chain) {
  ChainConfig cc;
  cc.seed = chain_seed(cfg.master_seed, n, chain);
  cc.burn_in_sweeps = cfg.burn_in;
  cc.sample_sweeps = cfg.sweeps;
  cc.thin = cfg.thin;
  cc.scan = cfg.scan;
  return cc;
}

std::size_t resolve_term(const ExperimentConfig& cfg) {
  if (cfg.term == 0) return cfg.spec.size() - 1;
  if (cfg.term > cfg.spec.size()) throw std::invalid_argument("term index beyond the spec");
  return cfg.term - 1;
}

// Mean of h over the recorded samples of one chain.
double chain_mean_hn(const Model& model, int n, const ChainConfig& cc, const std::vector<double>& table,
                     double* phi_mean = nullptr, double p = 0.0, double beta2_tilde = 0.0) {
  double sum = 0.0;
  double phi = 0.0;
  std::size_t count = 0;
  run_chain(model, n, cc, [&](const Graph& g, std::size_t) {
    sum += hn_value(g, table);
    if (phi_mean != nullptr) phi += phi_dispersion(g, p, beta2_tilde);
    ++count;
  });
  if (count == 0) throw std::invalid_argument("chain recorded no samples");
  if (phi_mean != nullptr) *phi_mean = phi / static_cast<double>(count);
  return sum / static_cast<double>(count);
}

json estimate_json(const Estimate& e) { return {{"estimate", e.mean}, {"stderr", e.stderr_}}; }

}  // namespace

ExperimentConfig default_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (experiment == "sharpness") {
    cfg.n_grid = {300};
    cfg.models = {"two-star", "exact"};
  } else if (experiment == "scaling") {
    cfg.n_grid = {64, 128, 256};
    cfg.models = {"exact", cfg.second_model};
  } else if (experiment == "marginals") {
    cfg.n_grid = {32, 64, 128, 256};
    cfg.models = {"two-star"};
  } else if (experiment == "remainders") {
    cfg.n_grid = {32, 64, 128, 256};
    cfg.models = {"second"};
  } else if (experiment == "decomposition") {
    cfg.n_grid = {16, 32, 64};
  } else {
    throw std::invalid_argument("unknown experiment '" + experiment +
                                "' (expected sharpness|scaling|marginals|remainders|decomposition)");
  }
  return cfg;
}

void apply_json(ExperimentConfig& cfg, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      // switching experiment resets the per-experiment defaults first
      const auto name = value.get<std::string>();
      if (name != cfg.experiment) {
        ExperimentConfig fresh = default_config(name);
        cfg.experiment = fresh.experiment;
        cfg.n_grid = fresh.n_grid;
        cfg.models = fresh.models;
      }
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") continue;
    if (key == "spec_path") {
      cfg.spec_path = value.get<std::string>();
      if (!cfg.spec_path.empty()) cfg.spec = load_spec(cfg.spec_path);
    } else if (key == "spec") {
      cfg.spec = spec_from_json(value);
    } else if (key == "n_grid") {
      cfg.n_grid = value.get<std::vector<int>>();
    } else if (key == "master_seed") {
      cfg.master_seed = value.get<std::uint64_t>();
    } else if (key == "chains") {
      cfg.chains = value.get<int>();
    } else if (key == "burn_in") {
      cfg.burn_in = value.get<int>();
    } else if (key == "sweeps") {
      cfg.sweeps = value.get<int>();
    } else if (key == "thin") {
      cfg.thin = value.get<int>();
    } else if (key == "scan") {
      cfg.scan = parse_scan(value.get<std::string>());
    } else if (key == "models") {
      cfg.models = value.get<std::vector<std::string>>();
    } else if (key == "second_model") {
      cfg.second_model = value.get<std::string>();
    } else if (key == "first_reference") {
      cfg.first_reference = value.get<std::string>();
    } else if (key == "M") {
      cfg.M = value.get<double>();
    } else if (key == "quad_nodes") {
      cfg.quad_nodes = value.get<int>();
    } else if (key == "tracked_pairs") {
      cfg.tracked_pairs = value.get<int>();
    } else if (key == "term") {
      cfg.term = value.get<std::size_t>();
    } else if (key == "probabilities") {
      cfg.probabilities = value.get<std::vector<double>>();
    } else if (key == "exact_n") {
      cfg.exact_n = value.get<int>();
    } else if (key == "orthogonality_n") {
      cfg.orthogonality_n = value.get<int>();
    } else if (key == "mc_samples") {
      cfg.mc_samples = value.get<int>();
    } else if (key == "threads") {
      cfg.threads = value.get<int>();
    } else if (key == "output") {
      cfg.output = value.get<std::string>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (cfg.experiment == "scaling") cfg.models = {"exact", cfg.second_model};
}

json to_json(const ExperimentConfig& cfg) {
  // threads and output only affect where and how fast results are produced
  return {{"experiment", cfg.experiment},
          {"spec_path", cfg.spec_path},
          {"spec", spec_to_json(cfg.spec)},
          {"n_grid", cfg.n_grid},
          {"master_seed", cfg.master_seed},
          {"chains", cfg.chains},
          {"burn_in", cfg.burn_in},
          {"sweeps", cfg.sweeps},
          {"thin", cfg.thin},
          {"scan", scan_name(cfg.scan)},
          {"models", cfg.models},
          {"second_model", cfg.second_model},
          {"first_reference", cfg.first_reference},
          {"M", cfg.M},
          {"quad_nodes", cfg.quad_nodes},
          {"tracked_pairs", cfg.tracked_pairs},
          {"term", cfg.term},
          {"probabilities", cfg.probabilities},
          {"exact_n", cfg.exact_n},
          {"orthogonality_n", cfg.orthogonality_n},
          {"mc_samples", cfg.mc_samples}};
}

void validate(const ExperimentConfig& cfg) {
  default_config(cfg.experiment);  // rejects unknown names
  if (cfg.n_grid.empty()) throw std::invalid_argument("n grid is empty");
  for (std::size_t k = 1; k < cfg.n_grid.size(); ++k)
    if (cfg.n_grid[k] <= cfg.n_grid[k - 1]) throw std::invalid_argument("n grid must be strictly increasing");
  if (cfg.chains < 1) throw std::invalid_argument("chains must be >= 1");
  if (cfg.burn_in < 0 || cfg.sweeps < 1 || cfg.thin < 1 || cfg.thin > cfg.sweeps)
    throw std::invalid_argument("need burn_in >= 0, sweeps >= 1 and 1 <= thin <= sweeps");
  if (uses_chains(cfg.experiment) && cfg.experiment != "scaling" && cfg.models.empty())
    throw std::invalid_argument("no model selected");
  if (cfg.first_reference != "exact" && cfg.first_reference != "chain")
    throw std::invalid_argument("first_reference must be exact or chain");
  if (cfg.tracked_pairs < 1) throw std::invalid_argument("tracked_pairs must be >= 1");
  for (double p : cfg.probabilities)
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probabilities must lie in (0, 1)");
}

Estimate mean_and_stderr(std::span<const double> values) {
  Estimate e;
  const auto k = values.size();
  if (k == 0) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double s = 0.0;
  for (double v : values) s += v;
  e.mean = s / static_cast<double>(k);
  if (k < 2) {
    e.stderr_ = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  e.stderr_ = std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k));
  return e;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope fit needs >= 2 paired points");
  const auto k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t chain_seed(std::uint64_t master, int n, int chain) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(chain)});
}

FixedPointReport require_dobrushin(const ErgmSpec& spec) {
  const FixedPointReport fp = solve_p(spec);
  if (!fp.subcritical || !fp.dobrushin) {
    throw std::runtime_error("spec outside the Dobrushin region: roots_found=" + std::to_string(fp.roots_found) +
                             " phi'(p)=" + format_number(fp.phi_prime_p) +
                             " Phi'(1)=" + format_number(fp.Phi_prime_1) + " (need a unique root, phi'(p) < 1 and Phi'(1) < 2)");
  }
  return fp;
}

SharpnessReport experiment_sharpness(const ExperimentConfig& cfg) {
  validate(cfg);
  SharpnessReport r;
  r.fixed_point = require_dobrushin(cfg.spec);
  const double p = r.fixed_point.p;
  r.rewrite = two_star_rewrite(cfg.spec, p);
  r.params = {p, r.rewrite.beta2_tilde, cfg.M, cfg.quad_nodes};
  validate(r.params);
  r.constants = sharpness_constants(p, r.rewrite.beta2_tilde);

  std::vector<Model> models;
  for (const auto& name : cfg.models) models.emplace_back(model_from_name(name, cfg.spec, p), cfg.spec);
  std::vector<std::vector<double>> tables;
  for (int n : cfg.n_grid) tables.push_back(g_vertex_table(n, r.params));

  const std::size_t nm = models.size();
  const auto nc = static_cast<std::size_t>(cfg.chains);
  std::vector<double> hn(cfg.n_grid.size() * nm * nc);
  std::vector<double> phi(hn.size());
  parallel_for(hn.size(), cfg.threads, [&](std::size_t task) {
    const std::size_t c = task % nc;
    const std::size_t m = (task / nc) % nm;
    const std::size_t ni = task / (nc * nm);
    const int n = cfg.n_grid[ni];
    hn[task] = chain_mean_hn(models[m], n, chain_config(cfg, n, static_cast<int>(c)), tables[ni], &phi[task], p,
                             r.rewrite.beta2_tilde);
  });

  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    SharpnessPoint pt;
    pt.n = cfg.n_grid[ni];
    pt.er_expectation = expect_hn_under_er(pt.n, r.params);
    pt.diff_norm = bounded_diff_norm_hn(pt.n, r.params);
    for (std::size_t m = 0; m < nm; ++m) {
      const auto first = hn.begin() + static_cast<std::ptrdiff_t>((ni * nm + m) * nc);
      std::vector<double> vals(first, first + static_cast<std::ptrdiff_t>(nc));
      pt.hn[cfg.models[m]] = mean_and_stderr(vals);
      if (m == 0) {
        const auto pf = phi.begin() + static_cast<std::ptrdiff_t>((ni * nm) * nc);
        std::vector<double> pv(pf, pf + static_cast<std::ptrdiff_t>(nc));
        pt.phi_dispersion = mean_and_stderr(pv);
        pt.gap = {pt.hn[cfg.models[m]].mean - pt.er_expectation, pt.hn[cfg.models[m]].stderr_};
      }
    }
    r.points.push_back(std::move(pt));
  }
  return r;
}

ScalingReport experiment_scaling(const ExperimentConfig& cfg) {
  validate(cfg);
  ScalingReport r;
  const FixedPointReport fp = require_dobrushin(cfg.spec);
  const double p = fp.p;
  const TwoStarRewriteModel rw = two_star_rewrite(cfg.spec, p);
  const SharpnessParams params{p, rw.beta2_tilde, cfg.M, cfg.quad_nodes};
  validate(params);
  if (cfg.chains < 8) {
    r.unstable = true;
    r.warnings.push_back("fewer than 8 chains per point; standard errors are unreliable");
  }

  const bool z_chain = cfg.first_reference == "chain";
  std::vector<Model> roles;
  roles.emplace_back(ExactModel{}, cfg.spec);
  roles.emplace_back(model_from_name(cfg.second_model, cfg.spec, p), cfg.spec);
  if (z_chain) roles.emplace_back(FirstOrderModel{p}, cfg.spec);
  std::vector<std::vector<double>> tables;
  for (int n : cfg.n_grid) tables.push_back(g_vertex_table(n, params));

  const std::size_t nr = roles.size();
  const auto nc = static_cast<std::size_t>(cfg.chains);
  std::vector<double> hn(cfg.n_grid.size() * nr * nc);
  parallel_for(hn.size(), cfg.threads, [&](std::size_t task) {
    const std::size_t c = task % nc;
    const std::size_t role = (task / nc) % nr;
    const std::size_t ni = task / (nc * nr);
    const int n = cfg.n_grid[ni];
    hn[task] = chain_mean_hn(roles[role], n, chain_config(cfg, n, static_cast<int>(c)), tables[ni]);
  });
  const auto slot = [&](std::size_t ni, std::size_t role) {
    const auto first = hn.begin() + static_cast<std::ptrdiff_t>((ni * nr + role) * nc);
    return std::vector<double>(first, first + static_cast<std::ptrdiff_t>(nc));
  };

  std::vector<double> ns, d1s, d2s;
  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    ScalingPoint pt;
    pt.n = cfg.n_grid[ni];
    pt.er_expectation = expect_hn_under_er(pt.n, params);
    pt.diff_norm = bounded_diff_norm_hn(pt.n, params);
    const auto x = slot(ni, 0);
    const auto y = slot(ni, 1);
    pt.exact = mean_and_stderr(x);
    pt.second = mean_and_stderr(y);
    std::vector<double> dxy(nc);
    for (std::size_t c = 0; c < nc; ++c) dxy[c] = x[c] - y[c];
    const Estimate e2 = mean_and_stderr(dxy);
    pt.d2 = {std::abs(e2.mean), e2.stderr_};
    if (z_chain) {
      const auto z = slot(ni, 2);
      pt.first = mean_and_stderr(z);
      std::vector<double> dxz(nc);
      for (std::size_t c = 0; c < nc; ++c) dxz[c] = x[c] - z[c];
      const Estimate e1 = mean_and_stderr(dxz);
      pt.d1 = {std::abs(e1.mean), e1.stderr_};
    } else {
      pt.first = {pt.er_expectation, 0.0};
      pt.d1 = {std::abs(pt.exact.mean - pt.er_expectation), pt.exact.stderr_};
    }
    const double n32 = std::pow(pt.n, 1.5);
    pt.d1_over_n32 = pt.d1.mean / (pt.diff_norm * n32);
    pt.d1_over_n = pt.d1.mean / (pt.diff_norm * pt.n);
    pt.d2_over_n32 = pt.d2.mean / (pt.diff_norm * n32);
    pt.d2_over_n = pt.d2.mean / (pt.diff_norm * pt.n);
    ns.push_back(pt.n);
    d1s.push_back(pt.d1.mean);
    d2s.push_back(pt.d2.mean);
    r.points.push_back(pt);
  }
  if (ns.size() >= 2) {
    r.d1_slope = fit_loglog_slope(ns, d1s);
    r.d2_slope = fit_loglog_slope(ns, d2s);
  } else {
    r.d1_slope = r.d2_slope = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

MarginalReport experiment_marginals(const ExperimentConfig& cfg) {
  validate(cfg);
  MarginalReport r;
  const FixedPointReport fp = require_dobrushin(cfg.spec);
  r.p = fp.p;
  r.model = cfg.models.front();
  const Model model(model_from_name(r.model, cfg.spec, r.p), cfg.spec);

  std::vector<std::vector<EdgeIndex>> tracked;
  for (int n : cfg.n_grid) {
    Rng rng(derive_seed(cfg.master_seed, {static_cast<std::uint64_t>(n), kTrackedPairsKey}));
    tracked.push_back(sample_pairs(n, static_cast<std::size_t>(cfg.tracked_pairs), rng));
  }
  const auto nc = static_cast<std::size_t>(cfg.chains);
  // per task: per-pair mean of q, per-pair mean of y, mean density
  struct ChainMeans {
    std::vector<double> q, y;
    double density = 0.0;
  };
  std::vector<ChainMeans> results(cfg.n_grid.size() * nc);
  parallel_for(results.size(), cfg.threads, [&](std::size_t task) {
    const std::size_t c = task % nc;
    const std::size_t ni = task / nc;
    const int n = cfg.n_grid[ni];
    MarginalCollector marg(model, tracked[ni]);
    CountCollector edges({"E"});
    Collector* cols[] = {&marg, &edges};
    const SampleTable t = run_chain(model, n, chain_config(cfg, n, static_cast<int>(c)), cols);
    ChainMeans cm;
    const std::size_t k = tracked[ni].size();
    for (std::size_t l = 0; l < k; ++l) {
      double sy = 0.0, sq = 0.0;
      for (std::size_t row = 0; row < t.rows; ++row) {
        sy += t.at(row, l);
        sq += t.at(row, k + l);
      }
      cm.y.push_back(sy / static_cast<double>(t.rows));
      cm.q.push_back(sq / static_cast<double>(t.rows));
    }
    cm.density = t.mean("E") / static_cast<double>(pair_count(n));
    results[task] = std::move(cm);
  });

  std::vector<double> ns, maxes, scaled;
  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    MarginalPoint pt;
    pt.n = cfg.n_grid[ni];
    const std::size_t k = tracked[ni].size();
    double sum_dev = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
      std::vector<double> qv(nc), yv(nc);
      for (std::size_t c = 0; c < nc; ++c) {
        qv[c] = results[ni * nc + c].q[l];
        yv[c] = results[ni * nc + c].y[l];
      }
      const Estimate eq = mean_and_stderr(qv);
      const Estimate ey = mean_and_stderr(yv);
      const double dev = std::abs(eq.mean - r.p);
      pt.max_dev = std::max(pt.max_dev, dev);
      pt.max_stderr = std::max(pt.max_stderr, eq.stderr_);
      pt.max_dev_indicator = std::max(pt.max_dev_indicator, std::abs(ey.mean - r.p));
      sum_dev += dev;
    }
    pt.mean_dev = sum_dev / static_cast<double>(k);
    std::vector<double> dens(nc);
    for (std::size_t c = 0; c < nc; ++c) dens[c] = results[ni * nc + c].density;
    pt.density = mean_and_stderr(dens);
    ns.push_back(pt.n);
    maxes.push_back(pt.max_dev);
    scaled.push_back(pt.n * pt.max_dev);
    r.points.push_back(pt);
  }
  r.slope = ns.size() >= 2 ? fit_loglog_slope(ns, maxes) : std::numeric_limits<double>::quiet_NaN();
  const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
  r.scaled_spread = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  return r;
}

RemainderReport experiment_remainders(const ExperimentConfig& cfg) {
  validate(cfg);
  RemainderReport r;
  const FixedPointReport fp = require_dobrushin(cfg.spec);
  const double p = fp.p;
  const std::size_t term = resolve_term(cfg);
  r.term = term + 1;
  r.model = cfg.models.front();
  const Model model(model_from_name(r.model, cfg.spec, p), cfg.spec);

  std::vector<std::vector<EdgeIndex>> tracked;
  for (int n : cfg.n_grid) {
    Rng rng(derive_seed(cfg.master_seed, {static_cast<std::uint64_t>(n), kTrackedPairsKey}));
    tracked.push_back(sample_pairs(n, static_cast<std::size_t>(cfg.tracked_pairs), rng));
  }
  const auto nc = static_cast<std::size_t>(cfg.chains);
  std::vector<double> means(cfg.n_grid.size() * nc);
  parallel_for(means.size(), cfg.threads, [&](std::size_t task) {
    const std::size_t c = task % nc;
    const std::size_t ni = task / nc;
    const int n = cfg.n_grid[ni];
    DeltaRemainderCollector col(cfg.spec, p, term, tracked[ni]);
    Collector* cols[] = {&col};
    means[task] = run_chain(model, n, chain_config(cfg, n, static_cast<int>(c)), cols).mean("abs_dR");
  });
  for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
    std::vector<double> v(means.begin() + static_cast<std::ptrdiff_t>(ni * nc),
                          means.begin() + static_cast<std::ptrdiff_t>((ni + 1) * nc));
    r.points.push_back({cfg.n_grid[ni], mean_and_stderr(v)});
  }
  for (std::size_t k = 1; k < r.points.size(); ++k)
    r.max_growth = std::max(r.max_growth, r.points[k].abs_delta.mean / r.points[k - 1].abs_delta.mean);
  return r;
}

DecompositionReport experiment_decomposition(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.exact_n > 6 || cfg.exact_n < 4) throw std::invalid_argument("exact mode needs 4 <= exact_n <= 6");
  DecompositionReport r;
  const std::vector<Motif> motifs{Motif::two_star(), Motif::triangle(), Motif::rectangle()};
  for (const auto& m : motifs)
    for (double p : cfg.probabilities) {
      const double res = max_reconstruction_residual(m, cfg.exact_n, p);
      r.residuals[m.name()][p] = res;
      r.max_residual = std::max(r.max_residual, res);
      r.max_centered_mean = std::max(r.max_centered_mean, std::abs(centered_count_mean(m, cfg.exact_n, p)));
    }
  for (double p : cfg.probabilities) {
    const OrthogonalityResult o = orthogonality_check(cfg.orthogonality_n, p);
    r.orthogonality.subsets = o.subsets;
    r.orthogonality.max_abs_covariance = std::max(r.orthogonality.max_abs_covariance, o.max_abs_covariance);
    r.orthogonality.max_abs_mean = std::max(r.orthogonality.max_abs_mean, o.max_abs_mean);
    for (int n : {cfg.exact_n, std::min(cfg.exact_n + 1, 6)}) {
      r.edge_variance.push_back({static_cast<double>(n), edge_tilde_variance(n, p),
                                 static_cast<double>(pair_count(n)) * p * (1.0 - p)});
    }
  }

  const FixedPointReport fp = solve_p(cfg.spec);
  const std::size_t term = resolve_term(cfg);
  r.variance.resize(cfg.n_grid.size());
  parallel_for(cfg.n_grid.size(), cfg.threads, [&](std::size_t ni) {
    const int n = cfg.n_grid[ni];
    r.variance[ni] = remainder_variance_mc(cfg.spec, term, n, fp.p, cfg.mc_samples, chain_seed(cfg.master_seed, n, 0));
  });
  r.ratio_decreasing = true;
  for (std::size_t k = 1; k < r.variance.size(); ++k)
    if (!(r.variance[k].ratio() < r.variance[k - 1].ratio())) r.ratio_decreasing = false;
  return r;
}

json to_json(const SharpnessReport& r) {
  json points = json::array();
  for (const auto& pt : r.points) {
    json hn = json::object();
    for (const auto& [name, e] : pt.hn) hn[name] = estimate_json(e);
    points.push_back({{"n", pt.n},
                      {"er_expectation", pt.er_expectation},
                      {"diff_norm", pt.diff_norm},
                      {"hn", hn},
                      {"phi_dispersion", estimate_json(pt.phi_dispersion)},
                      {"gap", estimate_json(pt.gap)}});
  }
  return {{"fixed_point", to_json(r.fixed_point)},
          {"beta1_tilde", r.rewrite.beta1_tilde},
          {"beta2_tilde", r.rewrite.beta2_tilde},
          {"a1_tilde", r.constants.a1_tilde},
          {"target", r.constants.target},
          {"er_bound", r.constants.er_bound},
          {"M", r.params.M},
          {"quad_nodes", r.params.quadrature_nodes},
          {"points", points}};
}

json to_json(const ScalingReport& r) {
  json points = json::array();
  for (const auto& pt : r.points)
    points.push_back({{"n", pt.n},
                      {"er_expectation", pt.er_expectation},
                      {"diff_norm", pt.diff_norm},
                      {"exact", estimate_json(pt.exact)},
                      {"first", estimate_json(pt.first)},
                      {"second", estimate_json(pt.second)},
                      {"D1", estimate_json(pt.d1)},
                      {"D2", estimate_json(pt.d2)},
                      {"D1_over_norm_n32", pt.d1_over_n32},
                      {"D1_over_norm_n", pt.d1_over_n},
                      {"D2_over_norm_n32", pt.d2_over_n32},
                      {"D2_over_norm_n", pt.d2_over_n}});
  return {{"points", points},
          {"D1_slope", r.d1_slope},
          {"D2_slope", r.d2_slope},
          {"unstable", r.unstable},
          {"warnings", r.warnings}};
}

json to_json(const MarginalReport& r) {
  json points = json::array();
  for (const auto& pt : r.points)
    points.push_back({{"n", pt.n},
                      {"max_dev", pt.max_dev},
                      {"mean_dev", pt.mean_dev},
                      {"max_stderr", pt.max_stderr},
                      {"max_dev_indicator", pt.max_dev_indicator},
                      {"density", estimate_json(pt.density)}});
  return {{"p", r.p}, {"model", r.model}, {"points", points}, {"slope", r.slope}, {"scaled_spread", r.scaled_spread}};
}

json to_json(const RemainderReport& r) {
  json points = json::array();
  for (const auto& pt : r.points) points.push_back({{"n", pt.n}, {"abs_delta_R", estimate_json(pt.abs_delta)}});
  return {{"term", r.term}, {"model", r.model}, {"points", points}, {"max_growth", r.max_growth}};
}

json to_json(const DecompositionReport& r) {
  json residuals = json::object();
  for (const auto& [name, by_p] : r.residuals)
    for (const auto& [p, v] : by_p) residuals[name][format_number(p)] = v;
  json edge_var = json::array();
  for (const auto& ev : r.edge_variance) edge_var.push_back({{"n", ev[0]}, {"enumerated", ev[1]}, {"Npq", ev[2]}});
  json var = json::array();
  for (const auto& v : r.variance)
    var.push_back({{"n", v.n}, {"var_first", v.var_first}, {"var_second", v.var_second}, {"ratio", v.ratio()}});
  return {{"residuals", residuals},
          {"max_residual", r.max_residual},
          {"orthogonality",
           {{"max_abs_covariance", r.orthogonality.max_abs_covariance},
            {"max_abs_mean", r.orthogonality.max_abs_mean},
            {"subsets", r.orthogonality.subsets}}},
          {"max_centered_mean", r.max_centered_mean},
          {"edge_variance", edge_var},
          {"remainder_variance", var},
          {"ratio_decreasing", r.ratio_decreasing}};
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutput out;
  const std::string& ex = cfg.experiment;
  const auto row = [&](int n, std::string model, std::string stat, double est, double se) {
    out.rows.push_back({ex, n, std::move(model), std::move(stat), est, se, cfg.master_seed,
                        uses_chains(ex) ? cfg.sweeps : 0});
  };
  if (ex == "sharpness") {
    const SharpnessReport r = experiment_sharpness(cfg);
    row(0, "-", "p", r.fixed_point.p, 0.0);
    row(0, "-", "a1_tilde", r.constants.a1_tilde, 0.0);
    row(0, "-", "target", r.constants.target, 0.0);
    row(0, "-", "er_bound", r.constants.er_bound, 0.0);
    for (const auto& pt : r.points) {
      row(pt.n, "first", "hn", pt.er_expectation, 0.0);
      for (const auto& name : cfg.models) row(pt.n, name, "hn", pt.hn.at(name).mean, pt.hn.at(name).stderr_);
      row(pt.n, cfg.models.front(), "phi_dispersion", pt.phi_dispersion.mean, pt.phi_dispersion.stderr_);
      row(pt.n, cfg.models.front(), "gap_vs_first", pt.gap.mean, pt.gap.stderr_);
      row(pt.n, "-", "diff_norm", pt.diff_norm, 0.0);
    }
    out.summary = to_json(r);
  } else if (ex == "scaling") {
    const ScalingReport r = experiment_scaling(cfg);
    for (const auto& pt : r.points) {
      row(pt.n, "exact", "hn", pt.exact.mean, pt.exact.stderr_);
      row(pt.n, "first", "hn", pt.first.mean, pt.first.stderr_);
      row(pt.n, cfg.second_model, "hn", pt.second.mean, pt.second.stderr_);
      row(pt.n, "exact-vs-first", "D1", pt.d1.mean, pt.d1.stderr_);
      row(pt.n, "exact-vs-" + cfg.second_model, "D2", pt.d2.mean, pt.d2.stderr_);
      row(pt.n, "-", "diff_norm", pt.diff_norm, 0.0);
      row(pt.n, "exact-vs-first", "D1_over_norm_n32", pt.d1_over_n32, pt.d1.stderr_ / (pt.diff_norm * std::pow(pt.n, 1.5)));
      row(pt.n, "exact-vs-" + cfg.second_model, "D2_over_norm_n", pt.d2_over_n, pt.d2.stderr_ / (pt.diff_norm * pt.n));
    }
    row(0, "exact-vs-first", "D1_slope", r.d1_slope, 0.0);
    row(0, "exact-vs-" + cfg.second_model, "D2_slope", r.d2_slope, 0.0);
    out.summary = to_json(r);
  } else if (ex == "marginals") {
    const MarginalReport r = experiment_marginals(cfg);
    for (const auto& pt : r.points) {
      row(pt.n, r.model, "max_abs_marginal_dev", pt.max_dev, pt.max_stderr);
      row(pt.n, r.model, "mean_abs_marginal_dev", pt.mean_dev, pt.max_stderr);
      row(pt.n, r.model, "max_abs_indicator_dev", pt.max_dev_indicator, 0.0);
      row(pt.n, r.model, "density", pt.density.mean, pt.density.stderr_);
    }
    row(0, r.model, "slope", r.slope, 0.0);
    row(0, r.model, "scaled_spread", r.scaled_spread, 0.0);
    out.summary = to_json(r);
  } else if (ex == "remainders") {
    const RemainderReport r = experiment_remainders(cfg);
    for (const auto& pt : r.points) row(pt.n, r.model, "abs_delta_R", pt.abs_delta.mean, pt.abs_delta.stderr_);
    row(0, r.model, "max_growth", r.max_growth, 0.0);
    out.summary = to_json(r);
  } else if (ex == "decomposition") {
    const DecompositionReport r = experiment_decomposition(cfg);
    for (const auto& [name, by_p] : r.residuals)
      for (const auto& [p, v] : by_p) row(cfg.exact_n, name, "max_residual_p" + format_number(p), v, 0.0);
    row(cfg.orthogonality_n, "-", "max_abs_covariance", r.orthogonality.max_abs_covariance, 0.0);
    row(cfg.exact_n, "-", "max_abs_centered_mean", r.max_centered_mean, 0.0);
    for (const auto& ev : r.edge_variance) row(static_cast<int>(ev[0]), "-", "var_e_tilde", ev[1], 0.0);
    for (const auto& v : r.variance) {
      row(v.n, "gnp", "var_first_remainder", v.var_first, 0.0);
      row(v.n, "gnp", "var_second_remainder", v.var_second, 0.0);
      row(v.n, "gnp", "variance_ratio", v.ratio(), 0.0);
    }
    out.summary = to_json(r);
  } else {
    throw std::invalid_argument("unknown experiment '" + ex + "'");
  }
  return out;
}

void write_csv(std::ostream& out, std::span<const ResultRow> rows) {
  out << "experiment,n,model,stat,estimate,stderr,seed,sweeps\n";
  for (const auto& r : rows)
    out << r.experiment << ',' << r.n << ',' << r.model << ',' << r.stat << ',' << format_number(r.estimate) << ','
        << format_number(r.stderr_) << ',' << r.seed << ',' << r.sweeps << '\n';
}

json manifest(const ExperimentConfig& cfg, const ExperimentOutput& out) {
  return {{"tool", "ergm-lab"}, {"version", ERGM_LAB_VERSION}, {"config", to_json(cfg)}, {"summary", out.summary}};
}

void write_outputs(const std::string& prefix, const ExperimentConfig& cfg, const ExperimentOutput& out) {
  std::ofstream csv(prefix + ".csv", std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + prefix + ".csv");
  write_csv(csv, out.rows);
  std::ofstream man(prefix + ".manifest.json", std::ios::binary);
  if (!man) throw std::runtime_error("cannot write " + prefix + ".manifest.json");
  man << manifest(cfg, out).dump(2) << '\n';
}

}  // namespace ergm
