#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergm/graph.hpp"

namespace ergm {

/// Small simple graph H without isolated vertices (at most 8 vertices).
///
/// Edges are 1-based pairs, normalized to (lo, hi) and sorted. Derived counts
/// (two-stars, triangles, automorphisms) are computed once at construction.
class Motif {
 public:
  enum class Shape { Edge, TwoStar, Triangle, Rectangle, Generic };

  static constexpr int kMaxVertices = 8;

  Motif(int vertices, std::vector<std::pair<int, int>> edges);

  static Motif edge();
  static Motif two_star();
  static Motif triangle();
  static Motif rectangle();
  /// "edge", "two_star", "triangle" or "rectangle".
  static Motif named(std::string_view name);

  int vertices() const { return v_; }
  int edges() const { return static_cast<int>(edges_.size()); }
  int two_stars() const { return two_stars_; }
  int triangles() const { return triangles_; }
  std::uint64_t automorphisms() const { return aut_; }
  Shape shape() const { return shape_; }
  /// Canonical name for the four built-in shapes, otherwise "custom".
  std::string name() const;

  const std::vector<std::pair<int, int>>& edge_list() const { return edges_; }
  bool adjacent(int a, int b) const;

  friend bool operator==(const Motif& a, const Motif& b) { return a.v_ == b.v_ && a.edges_ == b.edges_; }

 private:
  int v_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint32_t> adj_;  // bit (u-1) of adj_[w-1]
  int two_stars_ = 0;
  int triangles_ = 0;
  std::uint64_t aut_ = 0;
  Shape shape_ = Shape::Generic;
};

/// Number of injective edge-preserving maps V(H) -> V(G). Uses closed-form
/// kernels for the built-in shapes and backtracking otherwise.
std::uint64_t hom_count(const Motif& h, const Graph& g);
/// Backtracking count only; the reference the kernels are tested against.
std::uint64_t hom_count_generic(const Motif& h, const Graph& g);
/// t(H, G) = hom(H, G) / n^v.
double hom_density(const Motif& h, const Graph& g);

/// Number of (not necessarily induced) copies: hom_count / aut.
std::uint64_t copy_count(const Motif& h, const Graph& g);

/// hom(H, G + s) - hom(H, G - s), whatever the current state of s.
std::int64_t delta_hom(const Motif& h, const Graph& g, EdgeIndex s);
/// copy_count(H, G + s) - copy_count(H, G - s).
std::int64_t delta_copy(const Motif& h, const Graph& g, EdgeIndex s);

/// Number of 4-cycles through the pair s when s is absent: paths a-x-y-b.
std::int64_t four_paths_between(const Graph& g, EdgeIndex s);

/// n (n-1) ... (n-k+1); 1 for k <= 0.
double falling_factorial(int n, int k);

/// E_p hom(H, G) under G(n, p): falling(n, v) p^e.
double expected_hom(const Motif& h, int n, double p);
/// E_p copy_count(H, G): expected_hom / aut.
double expected_copies(const Motif& h, int n, double p);

}  // namespace ergm
