#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lks/rational.hpp"
#include "lks/vertex_set.hpp"

namespace lks {

/// Simple undirected graph on ids 0..n-1 with sorted adjacency lists.
/// Graphs up to kMatrixLimit vertices also keep a bit-matrix for O(1) edge tests.
class Graph {
 public:
  static constexpr int kMatrixLimit = 4096;

  Graph() = default;
  explicit Graph(int n);

  /// Throws InputError on self-loops, repeated edges or out-of-range ends.
  static Graph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

  void add_edge(Vertex u, Vertex v);

  int size() const noexcept { return n_; }
  long long edge_count() const noexcept { return edges_; }
  bool has_edge(Vertex u, Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbours(v).size()); }
  const std::vector<Vertex>& neighbours(Vertex v) const;
  bool valid(Vertex v) const noexcept { return v >= 0 && v < n_; }

  /// |N(v) ∩ S|
  int degree_into(Vertex v, const VertexSet& s) const;
  /// N(v) ∩ S
  VertexSet neighbours_in(Vertex v, const VertexSet& s) const;

  int max_degree() const;
  int min_degree() const;

  /// (u, v) with u < v, lexicographic.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Subgraph keeping only edges between `a` and `b` (vertex ids unchanged).
  Graph bipartite_part(const VertexSet& a, const VertexSet& b) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

 private:
  std::size_t check(Vertex v) const;

  int n_ = 0;
  long long edges_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> matrix_;
  std::size_t row_words_ = 0;
};

struct PairStats {
  long long e = 0;  // ordered pairs (x, y) ∈ X×Y with xy an edge
  Rational density;
  int mindeg = 0;  // min over x ∈ X of deg(x, Y)
  int maxdeg = 0;
};

/// Throws InputError if X or Y is empty or out of range.
PairStats degree_and_density(const Graph& g, const VertexSet& x, const VertexSet& y);

/// min / max over x ∈ X of deg(x, Y); X must be non-empty.
int mindeg(const Graph& g, const VertexSet& x, const VertexSet& y);
int maxdeg(const Graph& g, const VertexSet& x, const VertexSet& y);

/// Iterated shadow: exponent 0 gives U; layer i is {v : deg(v, layer i-1) > threshold}.
VertexSet shadow(const Graph& h, const VertexSet& u, const Rational& threshold, int exponent = 1);

/// "n" then one "u v" line per edge with u < v, lexicographic.
std::string serialize_graph(const Graph& g);
Graph parse_graph(std::string_view text);

}  // namespace lks
