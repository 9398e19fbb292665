#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lks/tree.hpp"

namespace lks {

enum class ShrubClass { A, B };
enum class ShrubKind { End, Internal };

std::string to_string(ShrubClass c);
std::string to_string(ShrubKind k);

/// A component of T − (W_A ∪ W_B).
struct Shrub {
  VertexSet vertices;
  ShrubClass cls = ShrubClass::A;
  ShrubKind kind = ShrubKind::End;
  Vertex seed = -1;                     // parent of `root`
  std::optional<Vertex> second_anchor;  // the cut vertex below the shrub, if any
  Vertex root = -1;                     // ⪯-minimal vertex of the shrub

  friend bool operator==(const Shrub&, const Shrub&) = default;
};

struct FinePartition {
  VertexSet w_a;
  VertexSet w_b;
  std::vector<Shrub> shrubs;  // ascending by root id
  int ell = 0;

  VertexSet cut_vertices() const { return set_union(w_a, w_b); }
};

/// Intermediate cut sets of the construction, kept for inspection.
struct PartitionStages {
  std::vector<Vertex> cuts;  // x_1, x_2, ... in the order they were cut
  VertexSet w1, w2, w3, w4, w5, x;
  bool swapped = false;  // A is the odd class
  long long end_mass_a = 0;  // end-tree mass by seed class before the swap decision
  long long end_mass_b = 0;
};

struct StagedPartition {
  FinePartition partition;
  PartitionStages stages;
};

/// ℓ-fine partition of t. Throws InputError unless 1 ≤ ell. Larger ell than
/// v(t) is accepted and gives W = {root}. Proven stage bounds are checked and
/// a failure raises ContractViolation.
FinePartition fine_partition(const RootedTree& t, int ell);
StagedPartition fine_partition_staged(const RootedTree& t, int ell);

struct ClauseResult {
  std::string clause;  // "structure", "a" … "l"
  bool passed = true;
  std::vector<std::string> failures;
};

struct ClauseReport {
  std::vector<ClauseResult> clauses;

  bool all_passed() const;
  const ClauseResult& clause(const std::string& name) const;
  std::size_t failure_count() const;
};

/// Checks every clause of the fine-partition definition and reports all failures.
/// Clause (a) also requires every shrub to be a whole component of T − W.
ClauseReport validate_fine_partition(const RootedTree& t, int ell, const FinePartition& p);

enum class SkeletonKind { Hub, Shrub };

struct SkeletonItem {
  SkeletonKind kind = SkeletonKind::Hub;
  VertexSet vertices;
  std::size_t index = 0;  // into the hub list or p.shrubs

  friend bool operator==(const SkeletonItem&, const SkeletonItem&) = default;
};

/// Components of T[W_A ∪ W_B], ascending by ⪯-minimal vertex id.
std::vector<VertexSet> hubs(const RootedTree& t, const FinePartition& p);

/// Items in preorder of the hub/shrub quotient tree, starting at the hub that
/// contains the root, children visited by ascending top-vertex id. Throws
/// InputError if p is not a valid fine partition of t.
std::vector<SkeletonItem> ordered_skeleton(const RootedTree& t, const FinePartition& p);

struct SubshrubSplit {
  VertexSet principal;
  std::vector<VertexSet> peripherals;  // ascending by smallest vertex
};

/// Splits an internal shrub minus its root. Throws InputError for end shrubs.
SubshrubSplit classify_subshrubs(const RootedTree& t, const FinePartition& p, const Shrub& s);

}  // namespace lks
