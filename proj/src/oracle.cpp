#include "lks/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "lks/errors.hpp"
#include "lks/random.hpp"

namespace lks {

namespace {

// Tree laid out for backtracking: BFS order from a maximum-degree vertex.
struct Pattern {
  std::vector<Vertex> order;      // tree vertex at each position
  std::vector<int> parent_pos;    // position of the parent, -1 for the first
  std::vector<int> degree;        // tree degree per position
  std::vector<int> need;          // children that still have to be placed next to it

  explicit Pattern(const RootedTree& t) {
    Vertex start = 0;
    for (int v = 0; v < t.size(); ++v) {
      if (t.degree(v) > t.degree(start)) start = v;
    }
    RootedTree r = t.rerooted(start);
    std::vector<int> pos(static_cast<std::size_t>(t.size()));
    for (Vertex v : r.bfs_order()) {
      pos[static_cast<std::size_t>(v)] = static_cast<int>(order.size());
      order.push_back(v);
      parent_pos.push_back(r.parent(v) < 0 ? -1 : pos[static_cast<std::size_t>(r.parent(v))]);
      degree.push_back(r.degree(v));
      need.push_back(static_cast<int>(r.children(v).size()));
    }
  }
  int size() const { return static_cast<int>(order.size()); }
};

struct MaskSearch {
  const Pattern& pat;
  const std::uint64_t* adj;
  int n;
  std::vector<int> image;
  std::uint64_t used = 0;

  bool place(int i) {
    if (i == pat.size()) return true;
    const std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
    std::uint64_t cand = i == 0 ? all : adj[image[static_cast<std::size_t>(pat.parent_pos[static_cast<std::size_t>(i)])]] & ~used;
    while (cand) {
      int h = std::countr_zero(cand);
      cand &= cand - 1;
      if (std::popcount(adj[h]) < pat.degree[static_cast<std::size_t>(i)]) continue;
      if (std::popcount(adj[h] & ~used) < pat.need[static_cast<std::size_t>(i)]) continue;
      image[static_cast<std::size_t>(i)] = h;
      used |= 1ULL << h;
      if (place(i + 1)) return true;
      used &= ~(1ULL << h);
    }
    return false;
  }

  bool run() {
    image.assign(static_cast<std::size_t>(pat.size()), -1);
    used = 0;
    if (pat.size() > n) return false;
    return place(0);
  }
};

struct GeneralSearch {
  const Pattern& pat;
  const Graph& g;
  std::vector<int> image;
  std::vector<char> used;

  int free_neighbours(Vertex h) const {
    int c = 0;
    for (Vertex x : g.neighbours(h)) c += used[static_cast<std::size_t>(x)] ? 0 : 1;
    return c;
  }

  bool try_vertex(int i, Vertex h) {
    if (used[static_cast<std::size_t>(h)]) return false;
    if (g.degree(h) < pat.degree[static_cast<std::size_t>(i)]) return false;
    if (free_neighbours(h) < pat.need[static_cast<std::size_t>(i)]) return false;
    image[static_cast<std::size_t>(i)] = h;
    used[static_cast<std::size_t>(h)] = 1;
    if (place(i + 1)) return true;
    used[static_cast<std::size_t>(h)] = 0;
    return false;
  }

  bool place(int i) {
    if (i == pat.size()) return true;
    if (i == 0) {
      for (int h = 0; h < g.size(); ++h) {
        if (try_vertex(i, h)) return true;
      }
      return false;
    }
    Vertex anchor = image[static_cast<std::size_t>(pat.parent_pos[static_cast<std::size_t>(i)])];
    for (Vertex h : g.neighbours(anchor)) {
      if (try_vertex(i, h)) return true;
    }
    return false;
  }
};

std::vector<std::uint64_t> masks_of(const Graph& g) {
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(g.size()), 0);
  for (int v = 0; v < g.size(); ++v) {
    for (Vertex w : g.neighbours(v)) adj[static_cast<std::size_t>(v)] |= 1ULL << w;
  }
  return adj;
}

}  // namespace

std::optional<std::vector<Vertex>> contains_tree(const Graph& g, const RootedTree& t) {
  Pattern pat(t);
  std::vector<int> image;
  bool found = false;
  if (t.size() > g.size()) return std::nullopt;
  if (g.size() <= 64) {
    auto adj = masks_of(g);
    MaskSearch s{pat, adj.data(), g.size(), {}, 0};
    found = s.run();
    image = std::move(s.image);
  } else {
    GeneralSearch s{pat, g, std::vector<int>(static_cast<std::size_t>(pat.size()), -1),
                    std::vector<char>(static_cast<std::size_t>(g.size()), 0)};
    found = s.place(0);
    image = std::move(s.image);
  }
  if (!found) return std::nullopt;
  std::vector<Vertex> out(static_cast<std::size_t>(t.size()), -1);
  for (int i = 0; i < pat.size(); ++i) out[static_cast<std::size_t>(pat.order[static_cast<std::size_t>(i)])] = image[static_cast<std::size_t>(i)];
  return out;
}

bool lks_membership(const Graph& g, long long k, const Rational& alpha) {
  const Rational degree_floor = (1 + alpha) * k;
  long long count = 0;
  for (int v = 0; v < g.size(); ++v) count += Rational(g.degree(v)) >= degree_floor ? 1 : 0;
  return Rational(count) >= (Rational(1, 2) + alpha) * g.size();
}

LksSmallReport lks_small_check(const Graph& g, long long k, const Rational& eta) {
  LksSmallReport r;
  r.member = lks_membership(g, k, eta);
  const std::int64_t high = ceil_of((1 + 2 * eta) * k);
  const std::int64_t exact = ceil_of((1 + eta) * k);
  const Rational small_below = (1 + eta) * k;
  for (auto [u, v] : g.edges()) {
    if (g.degree(u) > high && g.degree(v) > high) {
      r.high_degree_ok = false;
      r.high_degree_edges.emplace_back(u, v);
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    if (!(Rational(g.degree(v)) < small_below)) continue;
    for (Vertex w : g.neighbours(v)) {
      if (g.degree(w) != exact) {
        r.small_neighbours_ok = false;
        r.small_violations.emplace_back(v, w);
      }
    }
  }
  r.edges = g.edge_count();
  r.edge_bound = k * g.size();
  r.edge_bound_ok = r.edges <= r.edge_bound;
  return r;
}

ConjectureReport verify_conjecture_range(int n_max) {
  if (n_max < 0 || n_max > 7) throw InputError("verify_conjecture_range supports n_max between 0 and 7");
  const auto started = std::chrono::steady_clock::now();
  ConjectureReport report;
  report.n_max = n_max;
  report.graphs_per_n.assign(static_cast<std::size_t>(n_max + 1), 0);

  std::vector<std::vector<RootedTree>> trees(static_cast<std::size_t>(n_max + 1));
  std::vector<std::vector<Pattern>> patterns(static_cast<std::size_t>(n_max + 1));
  for (int k = 1; k <= n_max; ++k) {
    trees[static_cast<std::size_t>(k)] = enumerate_trees(k);
    for (const auto& t : trees[static_cast<std::size_t>(k)]) patterns[static_cast<std::size_t>(k)].emplace_back(t);
  }

  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    }
    const std::uint64_t graphs = 1ULL << pairs.size();
    report.graphs_per_n[static_cast<std::size_t>(n)] = static_cast<long long>(graphs);
    std::uint64_t adj[64];
    for (std::uint64_t code = 0; code < graphs; ++code) {
      ++report.graphs_swept;
      std::fill(adj, adj + n, 0);
      for (std::size_t e = 0; e < pairs.size(); ++e) {
        if (code >> e & 1ULL) {
          adj[pairs[e].first] |= 1ULL << pairs[e].second;
          adj[pairs[e].second] |= 1ULL << pairs[e].first;
        }
      }
      for (int k = 1; k <= n; ++k) {
        int qualified = 0;
        for (int v = 0; v < n; ++v) qualified += std::popcount(adj[v]) >= k - 1 ? 1 : 0;
        if (2 * qualified < n) {
          ++report.instances_skipped;
          continue;
        }
        ++report.instances_checked;
        const auto& pats = patterns[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < pats.size(); ++i) {
          ++report.embeddings_checked;
          MaskSearch s{pats[i], adj, n, {}, 0};
          if (s.run()) continue;
          Graph g(n);
          for (std::size_t e = 0; e < pairs.size(); ++e) {
            if (code >> e & 1ULL) g.add_edge(pairs[e].first, pairs[e].second);
          }
          report.counterexamples.push_back({std::move(g), k, trees[static_cast<std::size_t>(k)][i]});
        }
      }
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

RootedTree gen_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw InputError("a tree needs at least one vertex");
  if (n == 1) return RootedTree();
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (n == 2) {
    edges.emplace_back(0, 1);
    return RootedTree::from_edges(2, 0, edges);
  }
  Rng rng(seed);
  std::vector<int> code(static_cast<std::size_t>(n - 2));
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (auto& c : code) {
    c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    ++degree[static_cast<std::size_t>(c)];
  }
  std::set<int> leaves;
  for (int v = 0; v < n; ++v) {
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
  }
  for (int c : code) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, c);
    if (--degree[static_cast<std::size_t>(c)] == 1) leaves.insert(c);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return RootedTree::from_edges(n, 0, edges);
}

Graph gen_lks_graph(int n, long long k, const Rational& alpha, std::uint64_t seed) {
  if (n < 1) throw InputError("gen_lks_graph: n must be positive");
  if (k < 0 || alpha < 0) throw InputError("gen_lks_graph: k and alpha must be non-negative");
  const std::int64_t core = ceil_of((Rational(1, 2) + alpha) * n);
  const std::int64_t target = ceil_of((1 + alpha) * k);
  if (core > n) throw InputError("gen_lks_graph: (1/2 + alpha) n exceeds n");
  if (target > n - 1) throw InputError("gen_lks_graph: (1 + alpha) k exceeds n - 1");
  Rng rng(seed);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  rng.shuffle(order);
  Graph g(n);
  for (std::int64_t i = 0; i < core; ++i) {
    Vertex v = order[static_cast<std::size_t>(i)];
    std::vector<Vertex> others;
    for (int w = 0; w < n; ++w) {
      if (w != v && !g.has_edge(v, w)) others.push_back(w);
    }
    rng.shuffle(others);
    for (std::size_t j = 0; g.degree(v) < target && j < others.size(); ++j) g.add_edge(v, others[j]);
  }
  for (int extra = 0; extra < n; ++extra) {
    Vertex u = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    Vertex v = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
    if (u != v && !g.has_edge(u, v)) g.add_edge(u, v);
  }
  if (!lks_membership(g, k, alpha)) throw ContractViolation("gen_lks_graph produced a graph outside the class");
  return g;
}

namespace {

std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int from) {
  std::vector<std::string> parts;
  for (int w : adj[static_cast<std::size_t>(v)]) {
    if (w != from) parts.push_back(rooted_code(adj, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

std::vector<std::vector<int>> adjacency(const RootedTree& t) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.size()));
  for (auto [c, p] : t.edges()) {
    adj[static_cast<std::size_t>(c)].push_back(p);
    adj[static_cast<std::size_t>(p)].push_back(c);
  }
  return adj;
}

std::vector<int> centres(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) {
    std::vector<int> all;
    for (int v = 0; v < n; ++v) all.push_back(v);
    return all;
  }
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (deg[static_cast<std::size_t>(v)] <= 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (--deg[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

// Builds a tree from a rooted code, numbering vertices in preorder.
RootedTree from_code(const std::string& code) {
  std::vector<Vertex> parent;
  std::vector<Vertex> stack;
  for (char c : code) {
    if (c == '(') {
      parent.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(static_cast<Vertex>(parent.size() - 1));
    } else {
      stack.pop_back();
    }
  }
  return RootedTree::from_parents(std::move(parent), 0);
}

}  // namespace

std::string tree_canonical_form(const RootedTree& t) {
  auto adj = adjacency(t);
  std::string best;
  for (int c : centres(adj)) {
    std::string code = rooted_code(adj, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

std::vector<RootedTree> enumerate_trees(int n) {
  if (n < 1 || n > 10) throw InputError("enumerate_trees supports 1 <= n <= 10");
  std::set<std::string> level{"()"};
  for (int size = 2; size <= n; ++size) {
    std::set<std::string> next;
    for (const auto& code : level) {
      RootedTree t = from_code(code);
      for (int v = 0; v < t.size(); ++v) {
        std::vector<std::pair<Vertex, Vertex>> edges = t.edges();
        edges.emplace_back(t.size(), v);
        next.insert(tree_canonical_form(RootedTree::from_edges(t.size() + 1, 0, edges)));
      }
    }
    level = std::move(next);
  }
  std::vector<RootedTree> out;
  for (const auto& code : level) out.push_back(from_code(code));
  return out;
}

}  // namespace lks
