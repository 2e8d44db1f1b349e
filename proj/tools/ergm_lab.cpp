#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergm/experiments.hpp"
#include "ergm/fixed_point.hpp"
#include "ergm/graph.hpp"
#include "ergm/hoeffding.hpp"
#include "ergm/io.hpp"
#include "ergm/model.hpp"
#include "ergm/rng.hpp"
#include "ergm/sampler.hpp"
#include "ergm/testfn.hpp"

using nlohmann::json;

namespace {

ergm::ErgmSpec spec_or_default(const std::string& path) {
  return path.empty() ? ergm::ErgmSpec::rectangle(-0.08, 0.16) : ergm::load_spec(path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Writes to the named file, or stdout when the name is empty or "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct SampleArgs {
  std::string model = "exact";
  std::string spec;
  int n = 20;
  std::uint64_t seed = 1;
  int burn_in = 200;
  int sweeps = 1000;
  int thin = 1;
  std::string scan = "systematic";
  std::string collect = "E,V,T,R";
  double M = 200.0;
  int quad_nodes = 64;
  int tracked = 16;
  std::string output;
};

int run_sample(const SampleArgs& a) {
  const ergm::ErgmSpec spec = spec_or_default(a.spec);
  const ergm::FixedPointReport fp = ergm::solve_p(spec);
  const ergm::Model model(ergm::model_from_name(a.model, spec, fp.p), spec);

  ergm::ChainConfig cc;
  cc.seed = a.seed;
  cc.burn_in_sweeps = a.burn_in;
  cc.sample_sweeps = a.sweeps;
  cc.thin = a.thin;
  cc.scan = a.scan == "random" ? ergm::ScanOrder::Random : ergm::ScanOrder::Systematic;
  if (a.scan != "random" && a.scan != "systematic") throw std::invalid_argument("--scan must be systematic or random");

  std::vector<std::unique_ptr<ergm::Collector>> owned;
  std::vector<std::string> counts;
  ergm::Rng pair_rng(ergm::derive_seed(a.seed, {0x70616972ULL}));  // "pair"
  std::vector<ergm::EdgeIndex> tracked;
  const auto tracked_pairs = [&] {
    if (tracked.empty()) tracked = ergm::sample_pairs(a.n, static_cast<std::size_t>(a.tracked), pair_rng);
    return tracked;
  };
  for (const auto& c : split_list(a.collect)) {
    if (c == "E" || c == "V" || c == "T" || c == "R") {
      counts.push_back(c);
    } else if (c == "hn") {
      const ergm::TwoStarRewriteModel rw = ergm::two_star_rewrite(spec, fp.p);
      const ergm::SharpnessParams params{fp.p, rw.beta2_tilde, a.M, a.quad_nodes};
      ergm::validate(params);
      owned.push_back(std::make_unique<ergm::DegreeSumCollector>("hn", ergm::g_vertex_table(a.n, params)));
    } else if (c == "marginals") {
      owned.push_back(std::make_unique<ergm::MarginalCollector>(model, tracked_pairs()));
    } else if (c == "dR") {
      owned.push_back(std::make_unique<ergm::DeltaRemainderCollector>(spec, fp.p, spec.size() - 1, tracked_pairs()));
    } else if (c == "degrees") {
      owned.push_back(std::make_unique<ergm::DegreeCollector>(a.n));
    } else {
      throw std::invalid_argument("unknown collector '" + c + "' (expected E,V,T,R,hn,marginals,dR,degrees)");
    }
  }
  if (!counts.empty()) owned.insert(owned.begin(), std::make_unique<ergm::CountCollector>(counts));
  if (owned.empty()) throw std::invalid_argument("--collect selected nothing");
  std::vector<ergm::Collector*> cols;
  for (auto& c : owned) cols.push_back(c.get());

  const ergm::SampleTable t = ergm::run_chain(model, a.n, cc, cols);
  Sink sink(a.output);
  auto& out = sink.out();
  out << "sample";
  for (const auto& c : t.columns) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < t.rows; ++r) {
    out << r;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << ',' << ergm::format_number(t.at(r, c));
    out << '\n';
  }
  return 0;
}

int run_solve_p(const std::string& spec_path) {
  const ergm::ErgmSpec spec = spec_or_default(spec_path);
  json j = ergm::to_json(ergm::solve_p(spec));
  j["triangle_free"] = spec.triangle_free();
  j["two_star_free"] = spec.two_star_free();
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_enumerate(const std::string& model_name, const std::string& spec_path, int n, const std::string& stats) {
  const ergm::ErgmSpec spec = spec_or_default(spec_path);
  const ergm::FixedPointReport fp = ergm::solve_p(spec);
  const ergm::Model model(ergm::model_from_name(model_name, spec, fp.p), spec);
  std::vector<ergm::Statistic> st;
  for (const auto& s : split_list(stats)) st.push_back(ergm::standard_statistic(s));
  const ergm::EnumerationResult r = ergm::enumerate(model, n, st, ergm::kEnumerationHardMaxN);
  json j{{"model", model.name()}, {"n", n}, {"log_Z", r.log_Z}, {"expectations", r.expectations}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_decompose(const std::string& motif, const std::string& graph_path, double p) {
  std::ifstream in(graph_path);
  if (!in) throw std::runtime_error("cannot read " + graph_path);
  const ergm::Graph g = ergm::read_edge_list(in);
  const ergm::Decomposition d = ergm::full_decomposition(ergm::Motif::named(motif), g, p);
  json terms = json::array();
  for (const auto& t : d.terms)
    terms.push_back({{"subgraph", ergm::motif_to_json(t.subgraph)},
                     {"coefficient", t.coefficient},
                     {"centered_count", t.centered_count}});
  json j{{"motif", motif},
         {"n", g.n()},
         {"p", p},
         {"expected_hom", d.expected_hom},
         {"hom", d.hom},
         {"reconstructed", d.reconstructed},
         {"relative_residual", d.relative_residual},
         {"terms", terms}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct ExperimentArgs {
  std::string config;
  std::string spec;
  std::string output;
  std::uint64_t seed = 0;
  int chains = 0;
  int sweeps = 0;
  int burn_in = -1;
  int threads = 0;
  std::vector<int> n_grid;
};

int run_experiment_cmd(const std::string& name, const ExperimentArgs& a) {
  ergm::ExperimentConfig cfg = ergm::default_config(name);
  // flags first; the config file has the last word
  if (!a.spec.empty()) {
    cfg.spec_path = a.spec;
    cfg.spec = ergm::load_spec(a.spec);
  }
  if (a.seed != 0) cfg.master_seed = a.seed;
  if (a.chains > 0) cfg.chains = a.chains;
  if (a.sweeps > 0) cfg.sweeps = a.sweeps;
  if (a.burn_in >= 0) cfg.burn_in = a.burn_in;
  if (!a.n_grid.empty()) cfg.n_grid = a.n_grid;
  cfg.threads = a.threads;
  cfg.output = a.output.empty() ? name : a.output;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw std::runtime_error("cannot read " + a.config);
    json j = json::parse(in);
    if (j.contains("experiment") && j["experiment"] != name)
      throw std::invalid_argument("config is for experiment '" + j["experiment"].get<std::string>() + "'");
    ergm::apply_json(cfg, j);
  }
  const ergm::ExperimentOutput out = ergm::run_experiment(cfg);
  ergm::write_outputs(cfg.output, cfg, out);
  std::cerr << "wrote " << cfg.output << ".csv and " << cfg.output << ".manifest.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ERGM approximation lab: fixed points, Hoeffding decompositions, Glauber sampling, experiments"};
  app.set_version_flag("--version", std::string(ERGM_LAB_VERSION));
  app.require_subcommand(1);

  std::string spec_path;
  auto* solve = app.add_subcommand("solve-p", "Solve the mean-field fixed point and classify the parameters");
  solve->add_option("--spec", spec_path, "Spec JSON (default: rectangle, beta = (-0.08, 0.16))");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Run a Glauber chain and print one CSV row per recorded sample");
  sample->add_option("--model", sa.model, "exact|first|second|two-star")->capture_default_str();
  sample->add_option("--spec", sa.spec, "Spec JSON");
  sample->add_option("--n", sa.n, "Vertices")->capture_default_str()->check(CLI::Range(2, 100000));
  sample->add_option("--seed", sa.seed, "Chain seed")->capture_default_str();
  sample->add_option("--burn-in", sa.burn_in, "Burn-in sweeps")->capture_default_str();
  sample->add_option("--sweeps", sa.sweeps, "Sampling sweeps")->capture_default_str();
  sample->add_option("--thin", sa.thin, "Sweeps between samples")->capture_default_str();
  sample->add_option("--scan", sa.scan, "systematic|random")->capture_default_str();
  sample->add_option("--collect", sa.collect, "Comma list of E,V,T,R,hn,marginals,dR,degrees")->capture_default_str();
  sample->add_option("--M", sa.M, "Truncation constant of h_n")->capture_default_str();
  sample->add_option("--quad-nodes", sa.quad_nodes, "Gauss-Hermite nodes for h_n")->capture_default_str();
  sample->add_option("--tracked", sa.tracked, "Pairs tracked by marginals/dR")->capture_default_str();
  sample->add_option("--output", sa.output, "CSV file (default stdout)");

  std::string enum_model = "exact";
  std::string enum_stats = "E,V,T,R";
  int enum_n = 5;
  auto* enumerate = app.add_subcommand("enumerate", "Exact expectations by summing over all graphs (n <= 7)");
  enumerate->add_option("--model", enum_model, "exact|first|second|two-star")->capture_default_str();
  enumerate->add_option("--spec", spec_path, "Spec JSON");
  enumerate->add_option("--n", enum_n, "Vertices")->capture_default_str()->check(CLI::Range(2, ergm::kEnumerationHardMaxN));
  enumerate->add_option("--stats", enum_stats, "Comma list of E,V,T,R")->capture_default_str();

  std::string motif = "rectangle";
  std::string graph_path;
  double p = 0.5;
  auto* decompose = app.add_subcommand("decompose", "Hoeffding decomposition of a motif's hom count in a graph");
  decompose->add_option("--motif", motif, "two_star|triangle|rectangle|edge")->capture_default_str();
  decompose->add_option("--graph", graph_path, "Edge-list file (first line: n <count>)")->required();
  decompose->add_option("--p", p, "Centering probability")->capture_default_str()->check(CLI::Range(0.0, 1.0));

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment; writes <output>.csv and <output>.manifest.json");
  experiment->require_subcommand(1);
  for (const char* name : {"sharpness", "scaling", "marginals", "remainders", "decomposition"}) {
    auto* sub = experiment->add_subcommand(name);
    sub->add_option("--config", ea.config, "JSON config; its keys override flags");
    sub->add_option("--spec", ea.spec, "Spec JSON");
    sub->add_option("--output", ea.output, "Output prefix (default: experiment name)");
    sub->add_option("--seed", ea.seed, "Master seed");
    sub->add_option("--chains", ea.chains, "Chains per point");
    sub->add_option("--sweeps", ea.sweeps, "Sampling sweeps per chain");
    sub->add_option("--burn-in", ea.burn_in, "Burn-in sweeps per chain");
    sub->add_option("--n", ea.n_grid, "n grid");
    sub->add_option("--threads", ea.threads, "Worker threads (0 = all cores)");
  }

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return run_solve_p(spec_path);
    if (*sample) return run_sample(sa);
    if (*enumerate) return run_enumerate(enum_model, spec_path, enum_n, enum_stats);
    if (*decompose) return run_decompose(motif, graph_path, p);
    for (auto* sub : experiment->get_subcommands())
      if (*sub) return run_experiment_cmd(sub->get_name(), ea);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
