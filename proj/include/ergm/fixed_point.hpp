#pragma once

#include <vector>

#include "ergm/ergm_spec.hpp"

namespace ergm {

/// Phi(a) = sum_i beta_i e_i a^(e_i - 1).
double phi_cap(const ErgmSpec& spec, double a);
/// Phi'(a) = sum_{i>=2} beta_i e_i (e_i - 1) a^(e_i - 2).
double phi_cap_prime(const ErgmSpec& spec, double a);
/// phi(a) = e^{2 Phi(a)} / (e^{2 Phi(a)} + 1).
double phi_map(const ErgmSpec& spec, double a);
/// phi'(a) = 2 Phi'(a) phi(a) (1 - phi(a)).
double phi_map_prime(const ErgmSpec& spec, double a);

struct FixedPointReport {
  double p = 0.0;
  double phi_prime_p = 0.0;
  double Phi_prime_1 = 0.0;
  int roots_found = 0;
  bool subcritical = false;
  bool dobrushin = false;
  /// |2 Phi(p) - log(p / (1 - p))|
  double residual = 0.0;
  std::vector<double> roots;
};

/// Grid step used to bracket the roots of phi(a) - a before bisection.
inline constexpr double kRootScanStep = 1e-4;

/// Finds every sign change of phi(a) - a on (0, 1), refines each by bisection
/// and classifies the parameter point. Roots that touch zero without a sign
/// change are not detected.
FixedPointReport solve_p(const ErgmSpec& spec);

}  // namespace ergm
