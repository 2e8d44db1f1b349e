#include "ergm/graph.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ergm {

EdgeIndex make_edge(int n, int a, int b) {
  if (a < 1 || a > n || b < 1 || b > n) {
    throw std::out_of_range("vertex id out of range [1, " + std::to_string(n) + "]: (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  if (a == b) throw std::invalid_argument("self-loop (" + std::to_string(a) + ", " + std::to_string(a) + ")");
  return a < b ? EdgeIndex{a, b} : EdgeIndex{b, a};
}

std::size_t edge_position(int n, EdgeIndex s) {
  if (s.i < 1 || s.j > n || s.i >= s.j) throw std::out_of_range("invalid edge index");
  const auto i = static_cast<std::size_t>(s.i - 1);
  const auto nn = static_cast<std::size_t>(n);
  // pairs in rows 1..i-1: sum_{r=1}^{i-1} (n - r)
  return i * (2 * nn - i - 1) / 2 + static_cast<std::size_t>(s.j - s.i - 1);
}

EdgeIndex edge_at(int n, std::size_t position) {
  if (position >= pair_count(n)) throw std::out_of_range("edge position out of range");
  int i = 1;
  std::size_t row_len = static_cast<std::size_t>(n - 1);
  while (position >= row_len) {
    position -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + static_cast<int>(position)};
}

Graph::Graph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  adj_.assign(words_ * static_cast<std::size_t>(n), 0);
  degree_.assign(static_cast<std::size_t>(n), 0);
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) g.set_edge({a, b}, true);
  return g;
}

Graph Graph::from_mask(int n, std::uint64_t mask) {
  if (pair_count(n) > 64) throw std::invalid_argument("from_mask requires n <= 11");
  Graph g(n);
  std::size_t k = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b, ++k)
      if ((mask >> k) & 1U) g.set_edge({a, b}, true);
  return g;
}

std::uint64_t Graph::mask() const {
  if (pair_count(n_) > 64) throw std::invalid_argument("mask requires n <= 11");
  std::uint64_t m = 0;
  std::size_t k = 0;
  for (int a = 1; a <= n_; ++a)
    for (int b = a + 1; b <= n_; ++b, ++k)
      if (has_edge(a, b)) m |= std::uint64_t{1} << k;
  return m;
}

void Graph::check_vertex(int v) const {
  if (v < 1 || v > n_) throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
}

bool Graph::has_edge(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  const auto u = static_cast<std::size_t>(b - 1);
  return (row_ptr(a)[u / 64] >> (u % 64)) & 1U;
}

void Graph::toggle(EdgeIndex s) { set_edge(s, !has_edge(s)); }

void Graph::set_edge(EdgeIndex s, bool present) {
  check_vertex(s.i);
  check_vertex(s.j);
  if (s.i == s.j) throw std::invalid_argument("self-loop");
  if (has_edge(s) == present) return;
  const auto bi = static_cast<std::size_t>(s.i - 1);
  const auto bj = static_cast<std::size_t>(s.j - 1);
  row_ptr(s.i)[bj / 64] ^= std::uint64_t{1} << (bj % 64);
  row_ptr(s.j)[bi / 64] ^= std::uint64_t{1} << (bi % 64);
  const int d = present ? 1 : -1;
  degree_[bi] += d;
  degree_[bj] += d;
  if (present)
    ++edges_;
  else
    --edges_;
}

int Graph::degree(int v) const {
  check_vertex(v);
  return degree_[static_cast<std::size_t>(v - 1)];
}

int Graph::codegree(int a, int b) const {
  check_vertex(a);
  check_vertex(b);
  if (a == b) throw std::invalid_argument("codegree of a vertex with itself");
  const std::uint64_t* ra = row_ptr(a);
  const std::uint64_t* rb = row_ptr(b);
  int c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += std::popcount(ra[w] & rb[w]);
  return c;
}

std::span<const std::uint64_t> Graph::row(int v) const {
  check_vertex(v);
  return {row_ptr(v), words_};
}

std::vector<EdgeIndex> Graph::edge_list() const {
  std::vector<EdgeIndex> out;
  out.reserve(edges_);
  for (int a = 1; a <= n_; ++a)
    for (int b = a + 1; b <= n_; ++b)
      if (has_edge(a, b)) out.push_back({a, b});
  return out;
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  int n = -1;
  while (n < 0 && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag != "n" || !(ls >> n) || n < 1) throw std::runtime_error("edge list: expected header `n <count>`");
  }
  if (n < 0) throw std::runtime_error("edge list: missing header");
  Graph g(n);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    int a = 0;
    int b = 0;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw std::runtime_error("edge list: malformed line " + std::to_string(lineno));
    g.set_edge(make_edge(n, a, b), true);
  }
  return g;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.n() << '\n';
  for (const auto& s : g.edge_list()) out << s.i << ' ' << s.j << '\n';
}

}  // namespace ergm
