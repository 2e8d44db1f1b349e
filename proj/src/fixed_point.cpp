#include "ergm/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ergm {

namespace {

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double gap(const ErgmSpec& spec, double a) { return phi_map(spec, a) - a; }

double bisect(const ErgmSpec& spec, double lo, double hi) {
  // invariant: gap(lo) > 0 > gap(hi)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = gap(spec, mid);
    if (f == 0.0) return mid;
    if (f > 0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(gap(spec, lo)) <= std::abs(gap(spec, hi)) ? lo : hi;
}

}  // namespace

double phi_cap(const ErgmSpec& spec, double a) {
  double s = 0.0;
  for (const auto& t : spec.terms()) {
    const int e = t.motif.edges();
    s += t.beta * e * std::pow(a, e - 1);
  }
  return s;
}

double phi_cap_prime(const ErgmSpec& spec, double a) {
  double s = 0.0;
  for (const auto& t : spec.terms()) {
    const int e = t.motif.edges();
    if (e < 2) continue;
    s += t.beta * e * (e - 1) * std::pow(a, e - 2);
  }
  return s;
}

double phi_map(const ErgmSpec& spec, double a) { return logistic(2.0 * phi_cap(spec, a)); }

double phi_map_prime(const ErgmSpec& spec, double a) {
  const double f = phi_map(spec, a);
  return 2.0 * phi_cap_prime(spec, a) * f * (1.0 - f);
}

FixedPointReport solve_p(const ErgmSpec& spec) {
  FixedPointReport r;
  const int steps = static_cast<int>(std::lround(1.0 / kRootScanStep));
  double prev_a = 0.0;
  double prev_f = gap(spec, 0.0);  // phi(0) > 0
  bool prev_was_root = false;
  for (int k = 1; k <= steps; ++k) {
    const double a = static_cast<double>(k) / steps;
    const double f = gap(spec, a);
    if (f == 0.0) {
      r.roots.push_back(a);
      prev_was_root = true;
      continue;
    }
    if ((f > 0) != (prev_f > 0)) {
      if (!prev_was_root) r.roots.push_back(prev_f > 0 ? bisect(spec, prev_a, a) : bisect(spec, a, prev_a));
      prev_f = f;
    }
    prev_a = a;
    prev_was_root = false;
  }
  r.roots_found = static_cast<int>(r.roots.size());
  if (r.roots.empty()) throw std::runtime_error("no fixed point of phi found in (0, 1)");

  double best = std::numeric_limits<double>::infinity();
  for (double a : r.roots) {
    const double res = std::abs(gap(spec, a));
    if (res < best) {
      best = res;
      r.p = a;
    }
  }
  r.phi_prime_p = phi_map_prime(spec, r.p);
  r.Phi_prime_1 = phi_cap_prime(spec, 1.0);
  r.residual = std::abs(2.0 * phi_cap(spec, r.p) - std::log(r.p / (1.0 - r.p)));
  r.subcritical = r.roots_found == 1 && r.phi_prime_p < 1.0;
  r.dobrushin = r.Phi_prime_1 < 2.0;
  return r;
}

}  // namespace ergm
