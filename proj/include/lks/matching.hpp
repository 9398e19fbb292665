#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lks/regularity.hpp"

namespace lks {

struct MatchedPair {
  VertexSet a;
  VertexSet b;
  /// partner[i] is the vertex of `b` matched with a[i]. Empty means positional
  /// (i-th smallest of a with i-th smallest of b).
  std::vector<Vertex> partner;
};

/// Family of disjoint, equal-sized, ε-regular pairs of density at least d.
struct RegularizedMatching {
  std::vector<MatchedPair> pairs;
  Rational eps;
  Rational d;
  long long ell = 0;

  /// Union of all clusters.
  VertexSet vertices() const;
  /// The matching involution; throws InputError if some pair's partner map
  /// is not a bijection onto its other side.
  std::vector<std::pair<Vertex, Vertex>> involution() const;
};

/// U ∪ 𝔟(U ∩ V(M)).
VertexSet ghost(const RegularizedMatching& m, const VertexSet& u);

struct MatchingReport {
  bool valid = true;
  std::vector<std::string> violations;
  std::vector<RegularityVerdict> verdicts;  // one per pair, when sizes allowed a check
};

/// Checks disjointness, equal sizes, the ℓ lower bound, per-pair regularity
/// (exact up to 12 vertices per side, sampled above) and density ≥ d. With a
/// maximum-degree bound Δ every cluster must also satisfy |C| ≤ Δ/d.
MatchingReport validate_regularized_matching(const Graph& g, const RegularizedMatching& m,
                                             std::optional<long long> host_maxdeg_bound = std::nullopt,
                                             int samples = 200, std::uint64_t seed = 0);

/// True iff every pair has at least one side in F. Throws InputError when a
/// member of F is not a side of any pair.
bool matching_cover_check(const RegularizedMatching& m, const std::vector<VertexSet>& f);

}  // namespace lks
