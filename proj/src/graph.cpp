#include "lks/graph.hpp"

#include <algorithm>
#include <sstream>

#include "lks/errors.hpp"
#include "text_util.hpp"

namespace lks {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw InputError("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n), {});
  if (n <= kMatrixLimit) {
    row_words_ = (static_cast<std::size_t>(n) + 63) / 64;
    matrix_.assign(row_words_ * static_cast<std::size_t>(n), 0);
  }
}

Graph Graph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::size_t Graph::check(Vertex v) const {
  if (!valid(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

void Graph::add_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) throw InputError("self-loop at " + std::to_string(u));
  if (has_edge(u, v)) {
    throw InputError("repeated edge " + std::to_string(u) + " " + std::to_string(v));
  }
  auto insert = [](std::vector<Vertex>& list, Vertex w) {
    list.insert(std::upper_bound(list.begin(), list.end(), w), w);
  };
  insert(adj_[static_cast<std::size_t>(u)], v);
  insert(adj_[static_cast<std::size_t>(v)], u);
  if (!matrix_.empty()) {
    matrix_[static_cast<std::size_t>(u) * row_words_ + static_cast<std::size_t>(v) / 64] |= 1ULL << (v % 64);
    matrix_[static_cast<std::size_t>(v) * row_words_ + static_cast<std::size_t>(u) / 64] |= 1ULL << (u % 64);
  }
  ++edges_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  check(u);
  check(v);
  if (!matrix_.empty()) {
    return (matrix_[static_cast<std::size_t>(u) * row_words_ + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1ULL;
  }
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

const std::vector<Vertex>& Graph::neighbours(Vertex v) const { return adj_[check(v)]; }

int Graph::degree_into(Vertex v, const VertexSet& s) const {
  const auto& list = neighbours(v);
  int count = 0;
  if (s.size() < list.size()) {
    for (Vertex w : s) count += has_edge(v, w) ? 1 : 0;
    return count;
  }
  for (Vertex w : list) count += s.contains(w) ? 1 : 0;
  return count;
}

VertexSet Graph::neighbours_in(Vertex v, const VertexSet& s) const {
  std::vector<Vertex> out;
  const auto& list = neighbours(v);
  std::set_intersection(list.begin(), list.end(), s.begin(), s.end(), std::back_inserter(out));
  return VertexSet::from(std::move(out));
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : adj_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int best = n_;
  for (const auto& list : adj_) best = std::min(best, static_cast<int>(list.size()));
  return best;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(static_cast<std::size_t>(edges_));
  for (int u = 0; u < n_; ++u) {
    for (Vertex v : adj_[static_cast<std::size_t>(u)]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::bipartite_part(const VertexSet& a, const VertexSet& b) const {
  Graph out(n_);
  for (Vertex u : a) {
    for (Vertex v : neighbours(u)) {
      if (!b.contains(v)) continue;
      if (!out.has_edge(u, v)) out.add_edge(u, v);
    }
  }
  return out;
}

namespace {

void check_subset(const Graph& g, const VertexSet& s) {
  if (!s.within(g.size())) throw InputError("vertex set " + to_string(s) + " not inside the host");
}

}  // namespace

PairStats degree_and_density(const Graph& g, const VertexSet& x, const VertexSet& y) {
  check_subset(g, x);
  check_subset(g, y);
  if (x.empty() || y.empty()) throw InputError("density of a pair with an empty side is undefined");
  PairStats s;
  s.mindeg = static_cast<int>(y.size());
  for (Vertex v : x) {
    int d = g.degree_into(v, y);
    s.e += d;
    s.mindeg = std::min(s.mindeg, d);
    s.maxdeg = std::max(s.maxdeg, d);
  }
  s.density = Rational(s.e, static_cast<std::int64_t>(x.size() * y.size()));
  return s;
}

int mindeg(const Graph& g, const VertexSet& x, const VertexSet& y) {
  check_subset(g, x);
  check_subset(g, y);
  if (x.empty()) throw InputError("mindeg over an empty set");
  int best = static_cast<int>(y.size());
  for (Vertex v : x) best = std::min(best, g.degree_into(v, y));
  return best;
}

int maxdeg(const Graph& g, const VertexSet& x, const VertexSet& y) {
  check_subset(g, x);
  check_subset(g, y);
  int best = 0;
  for (Vertex v : x) best = std::max(best, g.degree_into(v, y));
  return best;
}

VertexSet shadow(const Graph& h, const VertexSet& u, const Rational& threshold, int exponent) {
  if (exponent < 0) throw InputError("negative shadow exponent");
  check_subset(h, u);
  VertexSet layer = u;
  for (int i = 0; i < exponent; ++i) {
    std::vector<int> count(static_cast<std::size_t>(h.size()), 0);
    for (Vertex w : layer) {
      for (Vertex v : h.neighbours(w)) ++count[static_cast<std::size_t>(v)];
    }
    std::vector<Vertex> next;
    for (int v = 0; v < h.size(); ++v) {
      if (Rational(count[static_cast<std::size_t>(v)]) > threshold) next.push_back(v);
    }
    layer = VertexSet::from(std::move(next));
  }
  return layer;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, "empty graph file");
  detail::expect_tokens(lines[0], 1);
  long long n = detail::parse_integer(lines[0].tokens[0], lines[0].number);
  if (n < 0 || n > 10'000'000) throw ParseError(lines[0].number, "vertex count out of range");
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    detail::expect_tokens(line, 2);
    long long u = detail::parse_integer(line.tokens[0], line.number);
    long long v = detail::parse_integer(line.tokens[1], line.number);
    if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(line.number, "vertex out of range");
    if (u == v) throw ParseError(line.number, "self-loop at " + std::to_string(u));
    if (u > v) throw ParseError(line.number, "edge endpoints must be written with u < v");
    if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
      throw ParseError(line.number, "repeated edge");
    }
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

}  // namespace lks
