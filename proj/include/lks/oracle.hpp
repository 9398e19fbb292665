#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lks/graph.hpp"
#include "lks/tree.hpp"

namespace lks {

/// Image of every tree vertex (indexed by tree id) under some injective,
/// edge-preserving map into g, or nullopt if none exists. Exhaustive.
std::optional<std::vector<Vertex>> contains_tree(const Graph& g, const RootedTree& t);

/// At least (1/2 + α)n vertices of degree at least (1 + α)k.
bool lks_membership(const Graph& g, long long k, const Rational& alpha);

struct LksSmallReport {
  bool member = false;     // G ∈ LKS(n, k, η)
  bool high_degree_ok = true;
  std::vector<std::pair<Vertex, Vertex>> high_degree_edges;  // both ends above ⌈(1+2η)k⌉
  bool small_neighbours_ok = true;
  std::vector<std::pair<Vertex, Vertex>> small_violations;  // (small vertex, neighbour of wrong degree)
  bool edge_bound_ok = true;
  long long edges = 0;
  long long edge_bound = 0;  // kn

  bool all() const { return member && high_degree_ok && small_neighbours_ok && edge_bound_ok; }
};

LksSmallReport lks_small_check(const Graph& g, long long k, const Rational& eta);

struct Counterexample {
  Graph graph;
  int k = 0;
  RootedTree tree;
};

struct ConjectureReport {
  int n_max = 0;
  std::vector<long long> graphs_per_n;   // index n, for n = 0..n_max
  long long graphs_swept = 0;
  long long instances_checked = 0;       // (graph, k) pairs meeting the hypothesis
  long long instances_skipped = 0;       // (graph, k) pairs where it fails
  long long embeddings_checked = 0;      // (graph, k, tree) triples
  std::vector<Counterexample> counterexamples;
  double seconds = 0;

  bool verified() const { return counterexamples.empty(); }
};

/// Every labelled graph on 1..n_max vertices, every k ≤ n: if at least n/2
/// vertices have degree at least k − 1 then every tree of order k must embed.
/// Throws InputError for n_max > 7.
ConjectureReport verify_conjecture_range(int n_max);

/// Uniform labelled tree via a Prüfer sequence, rooted at 0.
RootedTree gen_random_tree(int n, std::uint64_t seed);

/// Graph in LKS(n, k, α): a core of ⌈(1/2+α)n⌉ vertices raised to degree
/// ⌈(1+α)k⌉, plus random extra edges. Throws InputError when infeasible.
Graph gen_lks_graph(int n, long long k, const Rational& alpha, std::uint64_t seed);

/// One tree per isomorphism class, rooted at a centre, vertices in preorder.
/// Throws InputError for n < 1 or n > 10.
std::vector<RootedTree> enumerate_trees(int n);

/// Canonical string of the unrooted tree (equal iff isomorphic).
std::string tree_canonical_form(const RootedTree& t);

}  // namespace lks
