#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lks/graph.hpp"

namespace lks {

enum class RegularityStatus { RegularExact, RegularSampled, IrregularWitness, Unknown };

std::string to_string(RegularityStatus s);

struct RegularityMode {
  bool exact = true;
  int samples = 0;
  std::uint64_t seed = 0;

  static RegularityMode exhaustive() { return {}; }
  static RegularityMode sampled(int samples, std::uint64_t seed) { return {false, samples, seed}; }
};

struct RegularityVerdict {
  RegularityStatus status = RegularityStatus::Unknown;
  Rational density;
  /// Subpair (U', W') with |U'| ≥ ε|U|, |W'| ≥ ε|W| and |d(U,W) − d(U',W')| ≥ ε.
  std::optional<std::pair<VertexSet, VertexSet>> witness;
  std::optional<Rational> witness_density;
  /// Set when a super-regularity threshold was supplied: both min-degree conditions hold.
  std::optional<bool> super_regular;
  long long subpairs_examined = 0;

  bool regular() const {
    return status == RegularityStatus::RegularExact || status == RegularityStatus::RegularSampled;
  }
};

inline constexpr std::size_t kExactRegularityLimit = 12;

/// ε-regularity of the pair (U, W).
///
/// Exact mode enumerates every W' ⊆ W of admissible size; for each W' and each
/// admissible |U'| the extreme values of e(U', W') are attained by taking the
/// vertices of U with the most (or fewest) neighbours in W', so it suffices to
/// test those. Permitted only for |U|, |W| ≤ 12.
///
/// Sampled mode draws random subpairs of the minimum admissible sizes and
/// also tries the extreme completions of each draw. A witness is always a
/// proof of irregularity; RegularSampled is only statistical evidence.
RegularityVerdict check_regularity(const Graph& g, const VertexSet& u, const VertexSet& w, const Rational& eps,
                                   const RegularityMode& mode,
                                   const std::optional<Rational>& super_gamma = std::nullopt);

/// mindeg(U, W) ≥ γ|W| and mindeg(W, U) ≥ γ|U|.
bool super_degree_condition(const Graph& g, const VertexSet& u, const VertexSet& w, const Rational& gamma);

}  // namespace lks
