#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lks/vertex_set.hpp"

namespace lks {

/// Immutable rooted tree on vertex ids 0..n-1. The root may be any id.
///
/// Children lists are ascending by id; every traversal in the library derives
/// its order from them.
class RootedTree {
 public:
  /// `parent[root]` must be -1; every other entry a valid id. Throws InputError
  /// unless the parent map describes a single tree on all n vertices.
  static RootedTree from_parents(std::vector<Vertex> parent, Vertex root);

  /// Orients an undirected edge list away from `root`.
  static RootedTree from_edges(int n, Vertex root, const std::vector<std::pair<Vertex, Vertex>>& edges);

  /// Single-vertex tree.
  RootedTree() : RootedTree(from_parents({-1}, 0)) {}

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  Vertex root() const noexcept { return root_; }
  Vertex parent(Vertex v) const { return parent_[check(v)]; }
  const std::vector<Vertex>& children(Vertex v) const { return children_[check(v)]; }
  int depth(Vertex v) const { return depth_[check(v)]; }
  int degree(Vertex v) const {
    return static_cast<int>(children(v).size()) + (v == root_ ? 0 : 1);
  }
  bool is_leaf(Vertex v) const { return degree(v) == 1; }
  bool valid(Vertex v) const noexcept { return v >= 0 && v < size(); }

  /// Tree order: a ⪯ b iff a lies on the path from the root to b.
  bool precedes(Vertex a, Vertex b) const;

  /// Root first, then level by level with children in ascending id order.
  const std::vector<Vertex>& bfs_order() const noexcept { return bfs_; }

  /// Undirected neighbours: parent (if any) followed by children.
  std::vector<Vertex> neighbours(Vertex v) const;

  /// (child, parent) pairs in ascending child order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Same tree re-rooted at `new_root`; ids are unchanged.
  RootedTree rerooted(Vertex new_root) const;

  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.root_ == b.root_ && a.parent_ == b.parent_;
  }

 private:
  RootedTree(std::vector<Vertex> parent, Vertex root, int);
  std::size_t check(Vertex v) const;

  Vertex root_ = 0;
  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<int> depth_;
  std::vector<Vertex> bfs_;
};

/// A tree extracted from a larger one. Local id i corresponds to `original[i]`;
/// local ids follow ascending original ids.
struct Subtree {
  RootedTree tree;
  std::vector<Vertex> original;

  Vertex local_of(Vertex original_id) const;
};

struct ParityClasses {
  VertexSet even;  // contains the root
  VertexSet odd;
};

struct LeafStats {
  int leaves = 0;
  int deg3plus = 0;
  int leaves_even = 0;  // leaves in the root's colour class
  int leaves_odd = 0;
};

/// Distance in T, computed by walking both endpoints up to their common ancestor.
int dist(const RootedTree& t, Vertex u, Vertex v);

ParityClasses parity_classes(const RootedTree& t);

/// {v : x ⪯ v} in ascending id order.
VertexSet up_closure(const RootedTree& t, Vertex x);

/// End subtree T(↑x), rooted at x.
Subtree subtree_at(const RootedTree& t, Vertex x);

/// Tree induced on a connected vertex set, rooted at `new_root` (a member).
Subtree induced_subtree(const RootedTree& t, const VertexSet& vertices, Vertex new_root);

/// True when `vertices` is non-empty and induces a connected subgraph of t.
bool is_connected_in(const RootedTree& t, const VertexSet& vertices);

/// ⪯-maximal vertex outside `sub` lying below every vertex of `sub`.
/// Throws InputError if `sub` is empty, disconnected or contains the root.
Vertex seed_of(const RootedTree& t, const VertexSet& sub);

/// Vertices at even distance at least four from the root.
VertexSet fruits(const RootedTree& t);

LeafStats leaf_stats(const RootedTree& t);

/// Sizes of every end subtree, indexed by vertex.
std::vector<int> subtree_sizes(const RootedTree& t);

/// "n root" followed by one "child parent" line per non-root vertex, ascending child.
std::string serialize_tree(const RootedTree& t);

/// Inverse of serialize_tree. Throws ParseError with the offending line.
RootedTree parse_tree(std::string_view text);

}  // namespace lks
