#include "ergm/ergm_spec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ergm {

ErgmSpec::ErgmSpec(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("spec needs at least the edge term");
  if (terms_.front().motif.shape() != Motif::Shape::Edge)
    throw std::invalid_argument("the first term of a spec must be the edge motif");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!std::isfinite(terms_[i].beta)) throw std::invalid_argument("non-finite beta");
    if (i > 0 && terms_[i].beta < 0.0)
      throw std::invalid_argument("beta_" + std::to_string(i + 1) +
                                  " is negative; only beta_1 may be negative");
  }
}

ErgmSpec ErgmSpec::edge_only(double beta1) { return ErgmSpec({{Motif::edge(), beta1}}); }
ErgmSpec ErgmSpec::two_star(double beta1, double beta2) {
  return ErgmSpec({{Motif::edge(), beta1}, {Motif::two_star(), beta2}});
}
ErgmSpec ErgmSpec::triangle(double beta1, double beta2) {
  return ErgmSpec({{Motif::edge(), beta1}, {Motif::triangle(), beta2}});
}
ErgmSpec ErgmSpec::rectangle(double beta1, double beta2) {
  return ErgmSpec({{Motif::edge(), beta1}, {Motif::rectangle(), beta2}});
}

int ErgmSpec::max_motif_vertices() const {
  int v = 0;
  for (const auto& t : terms_) v = std::max(v, t.motif.vertices());
  return v;
}

bool ErgmSpec::triangle_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.motif.triangles() == 0; });
}

bool ErgmSpec::two_star_free() const {
  return std::all_of(terms_.begin() + 1, terms_.end(), [](const Term& t) { return t.motif.two_stars() == 0; });
}

}  // namespace ergm
