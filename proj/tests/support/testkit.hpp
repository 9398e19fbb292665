#pragma once

// Independent reference implementations used as oracles by the test suites.
// Nothing here calls into the library's own algorithms beyond basic types.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "lks/embedding.hpp"
#include "lks/graph.hpp"
#include "lks/tree.hpp"

namespace testkit {

using lks::Graph;
using lks::RootedTree;
using lks::Vertex;
using lks::VertexSet;
using Edges = std::vector<std::pair<Vertex, Vertex>>;

inline std::vector<std::vector<Vertex>> adjacency(int n, const Edges& edges) {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

inline std::vector<int> bfs_distances(int n, const Edges& edges, Vertex s) {
  auto adj = adjacency(n, edges);
  std::vector<int> d(static_cast<std::size_t>(n), -1);
  std::queue<Vertex> q;
  d[static_cast<std::size_t>(s)] = 0;
  q.push(s);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w : adj[static_cast<std::size_t>(u)]) {
      if (d[static_cast<std::size_t>(w)] < 0) {
        d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(u)] + 1;
        q.push(w);
      }
    }
  }
  return d;
}

inline Edges tree_edges(const RootedTree& t) {
  Edges out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (v != t.root()) out.emplace_back(v, t.parent(v));
  }
  return out;
}

/// Random recursive tree: vertex i attaches to a uniform earlier vertex, then ids are shuffled.
inline RootedTree random_tree(int n, std::mt19937_64& rng, int root = -1) {
  std::vector<Vertex> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  Edges edges;
  for (int i = 1; i < n; ++i) {
    int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
    edges.emplace_back(label[static_cast<std::size_t>(i)], label[static_cast<std::size_t>(j)]);
  }
  if (root < 0) root = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  return RootedTree::from_edges(n, root, edges);
}

/// Random tree with long paths: each vertex attaches to one of the last few vertices.
inline RootedTree random_caterpillar(int n, std::mt19937_64& rng, int window) {
  Edges edges;
  for (int i = 1; i < n; ++i) {
    int lo = std::max(0, i - window);
    int j = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(i - lo));
    edges.emplace_back(i, j);
  }
  return RootedTree::from_edges(n, 0, edges);
}

/// Root 0 with one random recursive subtree of each given order hanging off it.
inline RootedTree bouquet(const std::vector<int>& sizes, std::mt19937_64& rng) {
  Edges edges;
  int next = 1;
  for (int s : sizes) {
    const int base = next;
    edges.emplace_back(0, base);
    for (int i = 1; i < s; ++i) {
      edges.emplace_back(base + i, base + static_cast<int>(rng() % static_cast<std::uint64_t>(i)));
    }
    next += s;
  }
  return RootedTree::from_edges(next, 0, edges);
}

inline RootedTree path_tree(int n, Vertex root = 0) {
  Edges edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return RootedTree::from_edges(n, root, edges);
}

/// Star with `leaves` leaves, centre 0.
inline RootedTree star_tree(int leaves) {
  Edges edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return RootedTree::from_edges(leaves + 1, 0, edges);
}

/// Every labelled tree on n vertices, decoded from every Prüfer sequence.
inline void for_each_labelled_tree(int n, const std::function<void(const Edges&)>& visit) {
  if (n == 1) {
    visit({});
    return;
  }
  if (n == 2) {
    visit({{0, 1}});
    return;
  }
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  while (true) {
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int x : seq) ++deg[static_cast<std::size_t>(x)];
    Edges edges;
    for (int x : seq) {
      for (int leaf = 0; leaf < n; ++leaf) {
        if (deg[static_cast<std::size_t>(leaf)] == 1) {
          edges.emplace_back(leaf, x);
          --deg[static_cast<std::size_t>(leaf)];
          --deg[static_cast<std::size_t>(x)];
          break;
        }
      }
    }
    int u = -1, w = -1;
    for (int i = 0; i < n; ++i) {
      if (deg[static_cast<std::size_t>(i)] == 1) (u < 0 ? u : w) = i;
    }
    edges.emplace_back(u, w);
    visit(edges);
    std::size_t pos = 0;
    while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
    if (pos == seq.size()) break;
  }
}

/// One representative per isomorphism class via AHU canonical strings over all centres.
inline std::string canonical(int n, const Edges& edges) {
  auto adj = adjacency(n, edges);
  std::function<std::string(Vertex, Vertex)> enc = [&](Vertex v, Vertex p) {
    std::vector<std::string> parts;
    for (Vertex w : adj[static_cast<std::size_t>(v)]) {
      if (w != p) parts.push_back(enc(w, v));
    }
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& x : parts) s += x;
    return s + ")";
  };
  std::string best;
  for (Vertex r = 0; r < n; ++r) {
    std::string s = enc(r, -1);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

inline std::vector<RootedTree> unlabelled_trees(int n) {
  std::vector<std::string> seen;
  std::vector<RootedTree> out;
  for_each_labelled_tree(n, [&](const Edges& e) {
    std::string c = canonical(n, e);
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
      seen.push_back(c);
      out.push_back(RootedTree::from_edges(n, 0, e));
    }
  });
  return out;
}

/// Plain backtracking subgraph search, independent of the library's oracle.
inline bool brute_embeds(const Graph& g, const RootedTree& t) {
  const int k = t.size();
  if (k > g.size()) return false;
  std::vector<Vertex> order = t.bfs_order();
  std::vector<Vertex> img(static_cast<std::size_t>(k), -1);
  std::vector<char> used(static_cast<std::size_t>(g.size()), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == order.size()) return true;
    Vertex v = order[i];
    for (Vertex h = 0; h < g.size(); ++h) {
      if (used[static_cast<std::size_t>(h)]) continue;
      if (v != t.root() && !g.has_edge(h, img[static_cast<std::size_t>(t.parent(v))])) continue;
      used[static_cast<std::size_t>(h)] = 1;
      img[static_cast<std::size_t>(v)] = h;
      if (go(i + 1)) return true;
      used[static_cast<std::size_t>(h)] = 0;
      img[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  };
  return go(0);
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

/// Graph on n vertices from the bits of `mask` over pairs (u, v), u < v, in lexicographic order.
inline Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  int bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1U) g.add_edge(u, v);
    }
  }
  return g;
}

/// K_{a,b} on ids 0..a-1 and a..a+b-1.
inline Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = a; v < a + b; ++v) g.add_edge(u, v);
  }
  return g;
}

/// Edges between `a` and `b` (disjoint id sets) with probability p each.
inline void add_random_bipartite(Graph& g, const VertexSet& a, const VertexSet& b, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  for (Vertex u : a) {
    for (Vertex v : b) {
      if (coin(rng) && !g.has_edge(u, v)) g.add_edge(u, v);
    }
  }
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline VertexSet id_range(int lo, int hi) {
  std::vector<Vertex> v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return VertexSet::from(v);
}

inline VertexSet random_subset(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Vertex> v;
  for (int i = 0; i < n; ++i) {
    if (coin(rng)) v.push_back(i);
  }
  return VertexSet::from(v);
}

/// Checks directly that `img` is an injective edge-preserving map of t into g.
inline bool is_tree_copy(const Graph& g, const RootedTree& t, const std::vector<Vertex>& img) {
  if (static_cast<int>(img.size()) != t.size()) return false;
  std::vector<Vertex> sorted = img;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (Vertex x : img) {
    if (x < 0 || x >= g.size()) return false;
  }
  for (auto [c, p] : tree_edges(t)) {
    if (!g.has_edge(img[static_cast<std::size_t>(c)], img[static_cast<std::size_t>(p)])) return false;
  }
  return true;
}

/// Total embeddings: each a tree copy, each constraint respected, images
/// pairwise disjoint and clear of `forbidden`.
inline bool forest_sound(const Graph& g, const std::vector<RootedTree>& trees,
                         const std::vector<lks::PartialEmbedding>& es, const VertexSet& forbidden = {}) {
  if (trees.size() != es.size()) return false;
  std::vector<Vertex> all;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!is_tree_copy(g, trees[i], es[i].map)) return false;
    for (const auto& c : es[i].constraints) {
      for (Vertex x : c.tree_vertices) {
        if (!c.host_vertices.contains(es[i].map[static_cast<std::size_t>(x)])) return false;
      }
    }
    all.insert(all.end(), es[i].map.begin(), es[i].map.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  return std::none_of(all.begin(), all.end(), [&](Vertex v) { return forbidden.contains(v); });
}

inline bool sound(const Graph& g, const RootedTree& t, const lks::PartialEmbedding& e, const VertexSet& forbidden = {}) {
  return forest_sound(g, {t}, {e}, forbidden);
}

}  // namespace testkit
