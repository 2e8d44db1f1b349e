#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace ergm {

/// An unordered vertex pair {i, j} with 1 <= i < j <= n.
struct EdgeIndex {
  int i = 0;
  int j = 0;

  friend bool operator==(const EdgeIndex&, const EdgeIndex&) = default;
};

/// Number of vertex pairs, N = n(n-1)/2.
constexpr std::size_t pair_count(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Builds the pair {a, b} in canonical order. Throws std::out_of_range for ids
/// outside [1, n] and std::invalid_argument for a == b.
EdgeIndex make_edge(int n, int a, int b);

/// Row-major position of s among all pairs: (1,2), (1,3), ..., (1,n), (2,3), ...
std::size_t edge_position(int n, EdgeIndex s);
EdgeIndex edge_at(int n, std::size_t position);

/// Simple undirected graph on vertices 1..n.
///
/// Adjacency is stored as one bitset row per vertex so co-degrees reduce to
/// word-wise AND + popcount. Degrees and the edge total are maintained on
/// every mutation.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph complete(int n);
  /// Graph whose pair at row-major position k is present iff bit k of mask is
  /// set. Requires N <= 64.
  static Graph from_mask(int n, std::uint64_t mask);

  int n() const { return n_; }
  std::size_t num_edges() const { return edges_; }
  std::size_t words_per_row() const { return words_; }

  bool has_edge(int a, int b) const;
  bool has_edge(EdgeIndex s) const { return has_edge(s.i, s.j); }

  void toggle(EdgeIndex s);
  void set_edge(EdgeIndex s, bool present);

  int degree(int v) const;
  /// Degrees of vertices 1..n, stored at offsets 0..n-1.
  std::span<const int> degrees() const { return degree_; }

  /// Number of common neighbours of a and b other than a and b themselves.
  int codegree(int a, int b) const;

  /// Adjacency row of vertex v as packed 64-bit words; bit (u-1) marks u.
  std::span<const std::uint64_t> row(int v) const;

  /// Inverse of from_mask. Requires N <= 64.
  std::uint64_t mask() const;

  std::vector<EdgeIndex> edge_list() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void check_vertex(int v) const;
  std::uint64_t* row_ptr(int v) { return adj_.data() + static_cast<std::size_t>(v - 1) * words_; }
  const std::uint64_t* row_ptr(int v) const {
    return adj_.data() + static_cast<std::size_t>(v - 1) * words_;
  }

  int n_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<int> degree_;
};

/// Edge-list text format: a header line `n <count>` followed by one `i j`
/// pair per line with 1-based ids. Pairs may come in either order on input;
/// output is always i < j in row-major order.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace ergm
