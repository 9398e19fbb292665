#include "lks/tree.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "lks/errors.hpp"
#include "text_util.hpp"

namespace lks {

RootedTree RootedTree::from_parents(std::vector<Vertex> parent, Vertex root) {
  return RootedTree(std::move(parent), root, 0);
}

RootedTree::RootedTree(std::vector<Vertex> parent, Vertex root, int) : root_(root), parent_(std::move(parent)) {
  const int n = static_cast<int>(parent_.size());
  if (n == 0) throw InputError("a tree needs at least one vertex");
  if (root < 0 || root >= n) throw InputError("root " + std::to_string(root) + " out of range");
  if (parent_[static_cast<std::size_t>(root)] != -1) throw InputError("root must not have a parent");
  children_.assign(static_cast<std::size_t>(n), {});
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    Vertex p = parent_[static_cast<std::size_t>(v)];
    if (p < 0 || p >= n || p == v) {
      throw InputError("vertex " + std::to_string(v) + " has invalid parent " + std::to_string(p));
    }
    children_[static_cast<std::size_t>(p)].push_back(v);
  }
  // children were appended in ascending v, so they are already sorted
  depth_.assign(static_cast<std::size_t>(n), -1);
  bfs_.reserve(static_cast<std::size_t>(n));
  bfs_.push_back(root);
  depth_[static_cast<std::size_t>(root)] = 0;
  for (std::size_t head = 0; head < bfs_.size(); ++head) {
    Vertex v = bfs_[head];
    for (Vertex c : children_[static_cast<std::size_t>(v)]) {
      depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(v)] + 1;
      bfs_.push_back(c);
    }
  }
  if (static_cast<int>(bfs_.size()) != n) throw InputError("parent map contains a cycle");
}

RootedTree RootedTree::from_edges(int n, Vertex root, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n <= 0) throw InputError("a tree needs at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1) throw InputError("a tree on n vertices has n-1 edges");
  if (root < 0 || root >= n) throw InputError("root out of range");
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) throw InputError("invalid tree edge");
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  parent[static_cast<std::size_t>(root)] = -1;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adj[static_cast<std::size_t>(v)]) {
      if (parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = v;
      queue.push_back(w);
    }
  }
  if (std::find(parent.begin(), parent.end(), -2) != parent.end()) {
    throw InputError("edge list is not connected");
  }
  return from_parents(std::move(parent), root);
}

std::size_t RootedTree::check(Vertex v) const {
  if (v < 0 || v >= size()) throw InputError("vertex " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

bool RootedTree::precedes(Vertex a, Vertex b) const {
  check(a);
  int da = depth(a);
  while (depth(b) > da) b = parent(b);
  return a == b;
}

std::vector<Vertex> RootedTree::neighbours(Vertex v) const {
  std::vector<Vertex> out;
  if (v != root_) out.push_back(parent(v));
  const auto& ch = children(v);
  out.insert(out.end(), ch.begin(), ch.end());
  return out;
}

std::vector<std::pair<Vertex, Vertex>> RootedTree::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(parent_.size());
  for (int v = 0; v < size(); ++v) {
    if (v != root_) out.emplace_back(v, parent_[static_cast<std::size_t>(v)]);
  }
  return out;
}

RootedTree RootedTree::rerooted(Vertex new_root) const {
  check(new_root);
  return from_edges(size(), new_root, edges());
}

Vertex Subtree::local_of(Vertex original_id) const {
  auto it = std::lower_bound(original.begin(), original.end(), original_id);
  if (it == original.end() || *it != original_id) {
    throw InputError("vertex " + std::to_string(original_id) + " is not in the subtree");
  }
  return static_cast<Vertex>(it - original.begin());
}

int dist(const RootedTree& t, Vertex u, Vertex v) {
  if (!t.valid(u) || !t.valid(v)) throw InputError("dist: vertex out of range");
  int d = 0;
  while (t.depth(u) > t.depth(v)) {
    u = t.parent(u);
    ++d;
  }
  while (t.depth(v) > t.depth(u)) {
    v = t.parent(v);
    ++d;
  }
  while (u != v) {
    u = t.parent(u);
    v = t.parent(v);
    d += 2;
  }
  return d;
}

ParityClasses parity_classes(const RootedTree& t) {
  std::vector<Vertex> even;
  std::vector<Vertex> odd;
  for (int v = 0; v < t.size(); ++v) (t.depth(v) % 2 == 0 ? even : odd).push_back(v);
  return {VertexSet::from(std::move(even)), VertexSet::from(std::move(odd))};
}

VertexSet up_closure(const RootedTree& t, Vertex x) {
  if (!t.valid(x)) throw InputError("vertex out of range");
  std::vector<Vertex> out{x};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const auto& ch = t.children(out[head]);
    out.insert(out.end(), ch.begin(), ch.end());
  }
  return VertexSet::from(std::move(out));
}

Subtree subtree_at(const RootedTree& t, Vertex x) { return induced_subtree(t, up_closure(t, x), x); }

bool is_connected_in(const RootedTree& t, const VertexSet& vertices) {
  if (vertices.empty()) return false;
  // A vertex set of a tree is connected iff exactly one member has its parent outside.
  int tops = 0;
  for (Vertex v : vertices) {
    if (!t.valid(v)) return false;
    if (v == t.root() || !vertices.contains(t.parent(v))) ++tops;
  }
  return tops == 1;
}

Subtree induced_subtree(const RootedTree& t, const VertexSet& vertices, Vertex new_root) {
  if (!vertices.contains(new_root)) throw InputError("new root is not in the vertex set");
  if (!is_connected_in(t, vertices)) throw InputError("vertex set does not induce a subtree");
  Subtree sub;
  sub.original = vertices.ids();
  std::vector<std::pair<Vertex, Vertex>> local_edges;
  for (Vertex v : vertices) {
    if (v == t.root()) continue;
    Vertex p = t.parent(v);
    if (vertices.contains(p)) local_edges.emplace_back(sub.local_of(v), sub.local_of(p));
  }
  sub.tree = RootedTree::from_edges(static_cast<int>(vertices.size()), sub.local_of(new_root), local_edges);
  return sub;
}

Vertex seed_of(const RootedTree& t, const VertexSet& sub) {
  if (sub.empty()) throw InputError("seed_of: empty vertex set");
  if (sub.contains(t.root())) throw InputError("seed_of: subtree contains the root");
  if (!is_connected_in(t, sub)) throw InputError("seed_of: vertex set is not a subtree");
  Vertex top = sub.front();
  for (Vertex v : sub) {
    if (t.depth(v) < t.depth(top)) top = v;
  }
  return t.parent(top);
}

VertexSet fruits(const RootedTree& t) {
  std::vector<Vertex> out;
  for (int v = 0; v < t.size(); ++v) {
    if (t.depth(v) >= 4 && t.depth(v) % 2 == 0) out.push_back(v);
  }
  return VertexSet::from(std::move(out));
}

LeafStats leaf_stats(const RootedTree& t) {
  LeafStats s;
  for (int v = 0; v < t.size(); ++v) {
    int d = t.degree(v);
    if (d >= 3) ++s.deg3plus;
    if (d == 1) {
      ++s.leaves;
      (t.depth(v) % 2 == 0 ? s.leaves_even : s.leaves_odd) += 1;
    }
  }
  return s;
}

std::vector<int> subtree_sizes(const RootedTree& t) {
  std::vector<int> sizes(static_cast<std::size_t>(t.size()), 1);
  const auto& order = t.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != t.root()) sizes[static_cast<std::size_t>(t.parent(*it))] += sizes[static_cast<std::size_t>(*it)];
  }
  return sizes;
}

std::string serialize_tree(const RootedTree& t) {
  std::ostringstream out;
  out << t.size() << ' ' << t.root() << '\n';
  for (auto [child, parent] : t.edges()) out << child << ' ' << parent << '\n';
  return out.str();
}

RootedTree parse_tree(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  if (lines.empty()) throw ParseError(1, "empty tree file");
  detail::expect_tokens(lines[0], 2);
  long long n = detail::parse_integer(lines[0].tokens[0], lines[0].number);
  long long root = detail::parse_integer(lines[0].tokens[1], lines[0].number);
  if (n < 1 || n > 50'000'000) throw ParseError(lines[0].number, "vertex count out of range");
  if (root < 0 || root >= n) throw ParseError(lines[0].number, "root out of range");
  if (static_cast<long long>(lines.size()) - 1 != n - 1) {
    std::size_t where = lines.size() > static_cast<std::size_t>(n) ? lines[static_cast<std::size_t>(n)].number
                                                                   : lines.back().number;
    throw ParseError(where, "expected " + std::to_string(n - 1) + " edge lines, found " +
                                std::to_string(lines.size() - 1));
  }
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -2);
  parent[static_cast<std::size_t>(root)] = -1;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    detail::expect_tokens(line, 2);
    long long child = detail::parse_integer(line.tokens[0], line.number);
    long long par = detail::parse_integer(line.tokens[1], line.number);
    if (child < 0 || child >= n || par < 0 || par >= n) throw ParseError(line.number, "vertex out of range");
    if (child == par) throw ParseError(line.number, "self-loop");
    if (child == root) throw ParseError(line.number, "the root cannot have a parent");
    if (parent[static_cast<std::size_t>(child)] != -2) throw ParseError(line.number, "vertex has two parents");
    parent[static_cast<std::size_t>(child)] = static_cast<Vertex>(par);
  }
  try {
    return RootedTree::from_parents(std::move(parent), static_cast<Vertex>(root));
  } catch (const InputError& e) {
    throw ParseError(0, e.what());
  }
}

}  // namespace lks
