#include "ergm/model.hpp"

#include <cmath>
#include <stdexcept>

#include "ergm/fixed_point.hpp"
#include "ergm/hoeffding.hpp"
#include "ergm/motif.hpp"

namespace ergm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double logit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("reference edge probability must lie in (0, 1)");
  return std::log(p / (1.0 - p));
}

}  // namespace

SecondOrderModel second_order(const ErgmSpec& spec, double p) {
  SecondOrderModel m;
  m.p = p;
  for (const auto& t : spec.terms()) {
    const int e = t.motif.edges();
    if (t.motif.triangles() > 0) m.c_triangle += t.beta * t.motif.triangles() * std::pow(p, e - 3);
    if (t.motif.two_stars() > 0) m.c_two_star += t.beta * t.motif.two_stars() * std::pow(p, e - 2);
  }
  return m;
}

TwoStarRewriteModel two_star_rewrite(const ErgmSpec& spec, double p) {
  const SecondOrderModel so = second_order(spec, p);
  if (so.c_triangle != 0.0) throw std::invalid_argument("two-star rewrite needs a vanishing triangle coefficient");
  // (2 c_V / n) V~ = (2 c_V / n) V - 4 c_V p E + const
  return {-2.0 * so.c_two_star * p + 0.5 * logit(p), so.c_two_star};
}

ModelKind model_from_name(std::string_view name, const ErgmSpec& spec, double p) {
  if (name == "exact") return ExactModel{};
  if (name == "first") return FirstOrderModel{p};
  if (name == "second") return second_order(spec, p);
  if (name == "two-star") return two_star_rewrite(spec, p);
  throw std::invalid_argument("unknown model '" + std::string(name) + "' (expected exact|first|second|two-star)");
}

std::string model_name(const ModelKind& m) {
  return std::visit(overloaded{[](const ExactModel&) { return std::string("exact"); },
                               [](const FirstOrderModel&) { return std::string("first"); },
                               [](const SecondOrderModel&) { return std::string("second"); },
                               [](const TwoStarRewriteModel&) { return std::string("two-star"); }},
                    m);
}

double log_weight(const ModelKind& model, const ErgmSpec& spec, const Graph& g) {
  const int n = g.n();
  const double e = static_cast<double>(g.num_edges());
  return std::visit(
      overloaded{
          [&](const ExactModel&) {
            double s = 0.0;
            for (const auto& t : spec.terms())
              s += t.beta * static_cast<double>(hom_count(t.motif, g)) * std::pow(n, -(t.motif.vertices() - 2));
            return s;
          },
          [&](const FirstOrderModel& m) { return e * logit(m.p); },
          [&](const SecondOrderModel& m) {
            const TildeStats ts = tilde_stats(g, m.p, TildeVariant::Approximate);
            return 6.0 * m.c_triangle / n * ts.t_tilde + 2.0 * m.c_two_star / n * ts.v_tilde + e * logit(m.p);
          },
          [&](const TwoStarRewriteModel& m) {
            const double v = n >= 3 ? static_cast<double>(copy_count(Motif::two_star(), g)) : 0.0;
            return 2.0 * m.beta2_tilde / n * v + 2.0 * m.beta1_tilde * e;
          }},
      model);
}

double delta_log_weight(const ModelKind& model, const ErgmSpec& spec, const Graph& g, EdgeIndex s) {
  const int n = g.n();
  const int off = g.has_edge(s) ? 1 : 0;
  const auto degree_sum = [&] { return static_cast<double>(g.degree(s.i) - off + g.degree(s.j) - off); };
  return std::visit(
      overloaded{
          [&](const ExactModel&) {
            double d = 0.0;
            for (const auto& t : spec.terms())
              d += t.beta * static_cast<double>(delta_hom(t.motif, g, s)) * std::pow(n, -(t.motif.vertices() - 2));
            return d;
          },
          [&](const FirstOrderModel& m) { return logit(m.p); },
          [&](const SecondOrderModel& m) {
            const double dv = degree_sum() - v_tilde_edge_coefficient(n, m.p, TildeVariant::Approximate);
            double d = 2.0 * m.c_two_star / n * dv + logit(m.p);
            if (m.c_triangle != 0.0) {
              const double dt = g.codegree(s.i, s.j) - m.p * dv -
                                t_tilde_edge_coefficient(n, m.p, TildeVariant::Approximate);
              d += 6.0 * m.c_triangle / n * dt;
            }
            return d;
          },
          [&](const TwoStarRewriteModel& m) { return 2.0 * m.beta2_tilde / n * degree_sum() + 2.0 * m.beta1_tilde; }},
      model);
}

std::optional<double> Model::reference_p() const {
  return std::visit(overloaded{[&](const ExactModel&) -> std::optional<double> { return solve_p(spec_).p; },
                               [](const FirstOrderModel& m) -> std::optional<double> { return m.p; },
                               [](const SecondOrderModel& m) -> std::optional<double> { return m.p; },
                               [](const TwoStarRewriteModel& m) -> std::optional<double> {
                                 if (m.beta2_tilde < 0.0) return std::nullopt;
                                 return solve_p(ErgmSpec::two_star(m.beta1_tilde, m.beta2_tilde)).p;
                               }},
                    kind_);
}

int Model::max_motif_vertices() const {
  return std::visit(overloaded{[&](const ExactModel&) { return spec_.max_motif_vertices(); },
                               [](const FirstOrderModel&) { return 2; },
                               [](const SecondOrderModel& m) { return m.c_triangle != 0.0 || m.c_two_star != 0.0 ? 3 : 2; },
                               [](const TwoStarRewriteModel&) { return 3; }},
                    kind_);
}

}  // namespace ergm
