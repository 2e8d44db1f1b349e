#include "ergm/motif.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ergm {

namespace {

// Backtracking over injective maps V(H) -> V(G). Each motif vertex is placed
// after its already-placed neighbours, and its candidates are the AND of the
// placed neighbours' adjacency rows.
class Extender {
 public:
  Extender(const Motif& h, const Graph& g) : h_(h), g_(g), words_(g.words_per_row()) {
    image_.assign(static_cast<std::size_t>(h.vertices()) + 1, 0);
    used_.assign(words_, 0);
    scratch_.assign(static_cast<std::size_t>(h.vertices()) * words_, 0);
    full_.assign(words_, ~std::uint64_t{0});
    const int tail = g.n() % 64;
    if (tail != 0) full_.back() = (std::uint64_t{1} << tail) - 1;
  }

  // Number of injective edge-preserving extensions of the partial map
  // `fixed` (pairs of motif vertex, graph vertex). The H-edge joining two
  // fixed vertices is not checked when skip_fixed_edge is set.
  std::uint64_t count(const std::vector<std::pair<int, int>>& fixed, bool skip_fixed_edge) {
    std::fill(image_.begin(), image_.end(), 0);
    std::fill(used_.begin(), used_.end(), 0);
    order_.clear();
    for (auto [hv, gv] : fixed) {
      image_[static_cast<std::size_t>(hv)] = gv;
      set_used(gv, true);
      order_.push_back(hv);
    }
    if (!skip_fixed_edge) {
      for (std::size_t x = 0; x < fixed.size(); ++x)
        for (std::size_t y = x + 1; y < fixed.size(); ++y)
          if (h_.adjacent(fixed[x].first, fixed[y].first) && !g_.has_edge(fixed[x].second, fixed[y].second))
            return 0;
    }
    const std::size_t n_fixed = order_.size();
    // greedy placement order: most already-placed neighbours first
    std::vector<bool> placed(static_cast<std::size_t>(h_.vertices()) + 1, false);
    for (int hv : order_) placed[static_cast<std::size_t>(hv)] = true;
    while (static_cast<int>(order_.size()) < h_.vertices()) {
      int best = -1;
      int best_links = -1;
      for (int v = 1; v <= h_.vertices(); ++v) {
        if (placed[static_cast<std::size_t>(v)]) continue;
        int links = 0;
        for (int u : order_) links += h_.adjacent(u, v) ? 1 : 0;
        if (links > best_links) {
          best = v;
          best_links = links;
        }
      }
      placed[static_cast<std::size_t>(best)] = true;
      order_.push_back(best);
    }
    return recurse(n_fixed);
  }

 private:
  void set_used(int gv, bool on) {
    const auto b = static_cast<std::size_t>(gv - 1);
    if (on)
      used_[b / 64] |= std::uint64_t{1} << (b % 64);
    else
      used_[b / 64] &= ~(std::uint64_t{1} << (b % 64));
  }

  std::uint64_t recurse(std::size_t depth) {
    if (depth == order_.size()) return 1;
    const int hv = order_[depth];
    std::uint64_t* cand = scratch_.data() + depth * words_;
    for (std::size_t w = 0; w < words_; ++w) cand[w] = full_[w] & ~used_[w];
    for (std::size_t k = 0; k < depth; ++k) {
      const int u = order_[k];
      if (!h_.adjacent(u, hv)) continue;
      const auto r = g_.row(image_[static_cast<std::size_t>(u)]);
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= r[w];
    }
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits != 0) {
        const int gv = static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))) + 1;
        bits &= bits - 1;
        image_[static_cast<std::size_t>(hv)] = gv;
        set_used(gv, true);
        total += recurse(depth + 1);
        set_used(gv, false);
      }
    }
    image_[static_cast<std::size_t>(hv)] = 0;
    return total;
  }

  const Motif& h_;
  const Graph& g_;
  std::size_t words_;
  std::vector<int> image_;
  std::vector<int> order_;
  std::vector<std::uint64_t> used_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> full_;
};

void require_fits(const Motif& h, const Graph& g) {
  if (h.vertices() > g.n()) throw std::domain_error("motif has more vertices than the graph");
}

std::uint64_t count_two_stars(const Graph& g) {
  std::uint64_t v = 0;
  for (int d : g.degrees()) v += static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d > 0 ? d - 1 : 0) / 2;
  return v;
}

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t t = 0;
  for (int a = 1; a <= g.n(); ++a) {
    const auto ra = g.row(a);
    for (std::size_t w = 0; w < ra.size(); ++w) {
      std::uint64_t bits = ra[w];
      while (bits != 0) {
        const int b = static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))) + 1;
        bits &= bits - 1;
        if (b > a) t += static_cast<std::uint64_t>(g.codegree(a, b));
      }
    }
  }
  return t / 3;
}

std::uint64_t count_rectangles(const Graph& g) {
  std::uint64_t twice = 0;
  for (int a = 1; a <= g.n(); ++a)
    for (int b = a + 1; b <= g.n(); ++b) {
      const auto c = static_cast<std::uint64_t>(g.codegree(a, b));
      twice += c * (c > 0 ? c - 1 : 0) / 2;
    }
  return twice / 2;
}

}  // namespace

Motif::Motif(int vertices, std::vector<std::pair<int, int>> edges) : v_(vertices) {
  if (vertices < 2 || vertices > kMaxVertices)
    throw std::invalid_argument("motif needs between 2 and " + std::to_string(kMaxVertices) + " vertices");
  for (auto& [a, b] : edges) {
    if (a < 1 || a > v_ || b < 1 || b > v_) throw std::invalid_argument("motif edge endpoint out of range");
    if (a == b) throw std::invalid_argument("motif edge is a self-loop");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.empty()) throw std::invalid_argument("motif needs at least one edge");
  edges_ = std::move(edges);

  adj_.assign(static_cast<std::size_t>(v_), 0);
  for (auto [a, b] : edges_) {
    adj_[static_cast<std::size_t>(a - 1)] |= 1U << (b - 1);
    adj_[static_cast<std::size_t>(b - 1)] |= 1U << (a - 1);
  }
  std::vector<int> deg(static_cast<std::size_t>(v_));
  for (int u = 0; u < v_; ++u) {
    deg[static_cast<std::size_t>(u)] = std::popcount(adj_[static_cast<std::size_t>(u)]);
    if (deg[static_cast<std::size_t>(u)] == 0)
      throw std::invalid_argument("motif vertex " + std::to_string(u + 1) + " is isolated");
    two_stars_ += deg[static_cast<std::size_t>(u)] * (deg[static_cast<std::size_t>(u)] - 1) / 2;
  }
  for (int a = 1; a <= v_; ++a)
    for (int b = a + 1; b <= v_; ++b)
      for (int c = b + 1; c <= v_; ++c)
        if (adjacent(a, b) && adjacent(a, c) && adjacent(b, c)) ++triangles_;

  std::vector<int> perm(static_cast<std::size_t>(v_));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    bool ok = true;
    for (auto [a, b] : edges_) {
      if (!adjacent(perm[static_cast<std::size_t>(a - 1)], perm[static_cast<std::size_t>(b - 1)])) {
        ok = false;
        break;
      }
    }
    if (ok) ++aut_;
  } while (std::next_permutation(perm.begin(), perm.end()));

  const int e = this->edges();
  if (v_ == 2 && e == 1)
    shape_ = Shape::Edge;
  else if (v_ == 3 && e == 2)
    shape_ = Shape::TwoStar;
  else if (v_ == 3 && e == 3)
    shape_ = Shape::Triangle;
  else if (v_ == 4 && e == 4 && std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; }))
    shape_ = Shape::Rectangle;
}

Motif Motif::edge() { return Motif(2, {{1, 2}}); }
Motif Motif::two_star() { return Motif(3, {{1, 2}, {1, 3}}); }
Motif Motif::triangle() { return Motif(3, {{1, 2}, {1, 3}, {2, 3}}); }
Motif Motif::rectangle() { return Motif(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}); }

Motif Motif::named(std::string_view name) {
  if (name == "edge") return edge();
  if (name == "two_star") return two_star();
  if (name == "triangle") return triangle();
  if (name == "rectangle") return rectangle();
  throw std::invalid_argument("unknown motif name '" + std::string(name) + "'");
}

std::string Motif::name() const {
  switch (shape_) {
    case Shape::Edge: return "edge";
    case Shape::TwoStar: return "two_star";
    case Shape::Triangle: return "triangle";
    case Shape::Rectangle: return "rectangle";
    case Shape::Generic: break;
  }
  return "custom";
}

bool Motif::adjacent(int a, int b) const {
  if (a < 1 || a > v_ || b < 1 || b > v_) return false;
  return (adj_[static_cast<std::size_t>(a - 1)] >> (b - 1)) & 1U;
}

std::uint64_t hom_count_generic(const Motif& h, const Graph& g) {
  require_fits(h, g);
  Extender ext(h, g);
  return ext.count({}, false);
}

std::uint64_t hom_count(const Motif& h, const Graph& g) {
  require_fits(h, g);
  switch (h.shape()) {
    case Motif::Shape::Edge: return 2 * g.num_edges();
    case Motif::Shape::TwoStar: return 2 * count_two_stars(g);
    case Motif::Shape::Triangle: return 6 * count_triangles(g);
    case Motif::Shape::Rectangle: return 8 * count_rectangles(g);
    case Motif::Shape::Generic: break;
  }
  return hom_count_generic(h, g);
}

double hom_density(const Motif& h, const Graph& g) {
  return static_cast<double>(hom_count(h, g)) / std::pow(static_cast<double>(g.n()), h.vertices());
}

std::uint64_t copy_count(const Motif& h, const Graph& g) { return hom_count(h, g) / h.automorphisms(); }

std::int64_t four_paths_between(const Graph& g, EdgeIndex s) {
  const int a = s.i;
  const int b = s.j;
  const auto ra = g.row(a);
  const auto rb = g.row(b);
  const bool present = g.has_edge(a, b);
  std::int64_t paths = 0;
  for (std::size_t w = 0; w < ra.size(); ++w) {
    std::uint64_t bits = ra[w];
    while (bits != 0) {
      const int x = static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))) + 1;
      bits &= bits - 1;
      if (x == b) continue;
      const auto rx = g.row(x);
      for (std::size_t k = 0; k < rx.size(); ++k) paths += std::popcount(rx[k] & rb[k]);
    }
  }
  // with s present, a itself shows up as a common neighbour of every x and b
  if (present) paths -= g.degree(a) - 1;
  return paths;
}

std::int64_t delta_hom(const Motif& h, const Graph& g, EdgeIndex s) {
  require_fits(h, g);
  const bool present = g.has_edge(s);
  switch (h.shape()) {
    case Motif::Shape::Edge: return 2;
    case Motif::Shape::TwoStar: {
      const int off = present ? 1 : 0;
      return 2 * static_cast<std::int64_t>(g.degree(s.i) - off + g.degree(s.j) - off);
    }
    case Motif::Shape::Triangle: return 6 * static_cast<std::int64_t>(g.codegree(s.i, s.j));
    case Motif::Shape::Rectangle: return 8 * four_paths_between(g, s);
    case Motif::Shape::Generic: break;
  }
  // Exactly one H-edge can land on {a, b} under an injective map, so the
  // difference counts maps sending some oriented H-edge onto (a, b).
  Extender ext(h, g);
  std::uint64_t total = 0;
  for (auto [u, w] : h.edge_list()) {
    total += ext.count({{u, s.i}, {w, s.j}}, true);
    total += ext.count({{u, s.j}, {w, s.i}}, true);
  }
  return static_cast<std::int64_t>(total);
}

std::int64_t delta_copy(const Motif& h, const Graph& g, EdgeIndex s) {
  return delta_hom(h, g, s) / static_cast<std::int64_t>(h.automorphisms());
}

double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

double expected_hom(const Motif& h, int n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("edge probability outside [0, 1]");
  return falling_factorial(n, h.vertices()) * std::pow(p, h.edges());
}

double expected_copies(const Motif& h, int n, double p) {
  return expected_hom(h, n, p) / static_cast<double>(h.automorphisms());
}

}  // namespace ergm
