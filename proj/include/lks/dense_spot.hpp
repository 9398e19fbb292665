#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lks/graph.hpp"

namespace lks {

/// Bipartite subgraph D = (U, W; F) of a host graph.
struct DenseSpot {
  VertexSet u_side;
  VertexSet w_side;
  std::vector<std::pair<Vertex, Vertex>> edges;  // (u, w) with u ∈ U, w ∈ W
  long long m = 0;
  Rational gamma;

  VertexSet vertices() const { return set_union(u_side, w_side); }
  /// Number of spot edges at v.
  int spot_degree(Vertex v) const;
  Rational density() const;
};

/// Spot using every host edge between U and W.
DenseSpot complete_spot(const Graph& g, const VertexSet& u, const VertexSet& w, long long m, const Rational& gamma);

/// Empty when `s` is a genuine (m, γ)-dense spot of g; otherwise one line per broken invariant.
std::vector<std::string> spot_violations(const Graph& g, const DenseSpot& s);

struct SearchBudget {
  int exact_n_bound = 8;
  int bipartition_trials = 200;
  std::uint64_t seed = 0;
};

/// Largest n for which exact mode is attempted regardless of the budget.
inline constexpr int kExactSpotHardLimit = 16;

/// Returns a dense spot if one is found. For graphs with at most
/// budget.exact_n_bound vertices every (U, W) labelling is examined, so
/// std::nullopt is conclusive there; above it the search is heuristic.
std::optional<DenseSpot> find_dense_spot(const Graph& g, long long m, const Rational& gamma,
                                         const SearchBudget& budget = {});

enum class NowhereDenseStatus { NowhereDenseExact, NoSpotFoundHeuristic, SpotWitness };

std::string to_string(NowhereDenseStatus s);

struct NowhereDenseVerdict {
  NowhereDenseStatus status = NowhereDenseStatus::NoSpotFoundHeuristic;
  std::optional<DenseSpot> witness;
};

NowhereDenseVerdict check_nowhere_dense(const Graph& g, long long m, const Rational& gamma,
                                        const SearchBudget& budget = {});

struct AvoidingMode {
  bool exact = true;
  int trials = 0;
  std::uint64_t seed = 0;

  static AvoidingMode exhaustive() { return {}; }
  static AvoidingMode adversarial(int trials, std::uint64_t seed) { return {false, trials, seed}; }
};

struct AvoidingVerdict {
  bool avoiding = true;
  bool exhaustive = false;  // every admissible U was examined
  long long sets_examined = 0;
  /// On failure: a U with more than εk exceptional vertices, and those vertices.
  VertexSet violating_u;
  VertexSet bad;
};

inline constexpr long long kExactAvoidingFamilyLimit = 1LL << 20;

/// Vertices of E that lie in no spot D with |U ∩ V(D)| ≤ γ²k.
VertexSet exceptional_vertices(const std::vector<DenseSpot>& spots, const VertexSet& e, const VertexSet& u,
                               const Rational& gamma, long long k);

/// (Λ, ε, γ, k)-avoiding test. The exceptional set is allowed to depend on U.
/// Exact mode enumerates every U ⊆ ∪V(D) with |U| ≤ Λk (vertices outside all
/// spots never change the exceptional set); it throws InputError when that
/// family has more than 2^20 members. Throws InputError unless E ⊆ ∪V(D).
AvoidingVerdict check_avoiding(const Graph& g, const std::vector<DenseSpot>& spots, const VertexSet& e,
                               const Rational& lambda, const Rational& eps, const Rational& gamma, long long k,
                               const AvoidingMode& mode);

}  // namespace lks
