#include "ergm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ergm {

using nlohmann::json;

Motif motif_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("motif must be a JSON object");
  if (j.contains("name")) return Motif::named(j.at("name").get<std::string>());
  if (!j.contains("v") || !j.contains("edges")) throw std::invalid_argument("motif needs \"name\" or \"v\" + \"edges\"");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("motif edge must be a pair [i, j]");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Motif(j.at("v").get<int>(), std::move(edges));
}

json motif_to_json(const Motif& m) {
  if (m.shape() != Motif::Shape::Generic) return {{"name", m.name()}};
  json edges = json::array();
  for (auto [a, b] : m.edge_list()) edges.push_back({a, b});
  return {{"v", m.vertices()}, {"edges", edges}};
}

ErgmSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms")) throw std::invalid_argument("spec needs a \"terms\" array");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) terms.push_back({motif_from_json(t.at("motif")), t.at("beta").get<double>()});
  return ErgmSpec(std::move(terms));
}

json spec_to_json(const ErgmSpec& spec) {
  json terms = json::array();
  for (const auto& t : spec.terms()) terms.push_back({{"motif", motif_to_json(t.motif)}, {"beta", t.beta}});
  return {{"terms", terms}};
}

ErgmSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file " + path);
  return spec_from_json(json::parse(in));
}

json to_json(const FixedPointReport& r) {
  return {{"p", r.p},
          {"phi_prime_p", r.phi_prime_p},
          {"Phi_prime_1", r.Phi_prime_1},
          {"roots_found", r.roots_found},
          {"roots", r.roots},
          {"subcritical", r.subcritical},
          {"dobrushin", r.dobrushin},
          {"residual", r.residual}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace ergm
