#pragma once

#include <cstdint>
#include <vector>

#include "lks/dense_spot.hpp"
#include "lks/embedding.hpp"
#include "lks/matching.hpp"

namespace lks {

/// Quantitative hypotheses (the ε/β/γ inequalities) of several embedders cannot
/// be met by any host small enough to test exhaustively. With
/// enforce_hypotheses off only the structural preconditions (containments,
/// disjointness, sizes that the construction itself relies on) are checked and
/// the procedure runs as written; a stuck greedy step then surfaces as
/// EmbedFailure.
struct EmbedOptions {
  bool enforce_hypotheses = true;
};

struct RatioSplitInput {
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  Rational k;
  Rational x_prime;
};

/// Index set I (ascending) with
///   Σ_I x ≤ X′ ≤ Σ_I x + K   and   Σ_I y − K ≤ γX′ ≤ Σ_I y + 2K,   γ = Σy/Σx.
/// For γ ≤ 1 this is the prefix construction: grow J one index at a time, taking
/// the smallest index whose y/x ratio pulls Σ_J y back towards γΣ_J x, then keep
/// the longest prefix with Σ x ≤ X′. For γ > 1 the prefixes can drift by γK, so
/// I is rounded from a vertex of the fractional polytope instead.
/// Throws InputError when Σx = 0 or the input invariants fail.
std::vector<std::size_t> split_by_ratio(const RatioSplitInput& in);

/// The prefix sets J_1 = ∅ ⊂ J_2 ⊂ … ⊂ J_{s+1} = [s], as the order indices are added.
/// Every prefix keeps |Σ_J y − γΣ_J x| ≤ K. PreconditionError when Σy > Σx.
std::vector<std::size_t> ratio_order(const RatioSplitInput& in);

/// G with mindeg(G[A,B]) ≥ k/2 and every vertex of A of degree ≥ k contains
/// every tree of order k. The larger colour class X loses its leaves W; T − W
/// goes greedily into A (class Y) and B (X ∖ W); W hangs off full
/// neighbourhoods. A and B must be disjoint and A non-empty.
/// PreconditionError names the failing vertex; a stuck step is a ContractViolation.
PartialEmbedding embed_greedy_dense(const Graph& g, const VertexSet& a, const VertexSet& b, const RootedTree& t,
                                    long long k);

/// (r ↪ X*, even ↪ X, odd ↪ Y) inside an ε-regular pair (C, D). Roots and
/// later vertices are restricted to typical vertices (degree ≥ 3/2·β|Y| into Y,
/// resp. ≥ 3/2·β|X| into X) and chosen greedily by ascending id.
PartialEmbedding embed_in_regular_pair(const Graph& g, const VertexSet& c, const VertexSet& d, const VertexSet& x,
                                       const VertexSet& y, const VertexSet& x_star, const RootedTree& t,
                                       const Rational& eps, const Rational& beta, const EmbedOptions& opt = {});

/// Case bookkeeping of fill_pair, kept for inspection.
struct FillPlan {
  int fill_case = 0;              // 1, 2 or 3
  bool sides_swapped = false;     // C and D exchanged so that |X* ∩ C| ≥ |X* ∩ D|
  std::vector<std::size_t> i1;    // roots in W
  std::vector<std::size_t> i2;    // roots in D ∩ X*
  std::vector<std::size_t> rest;  // roots in (C ∩ X*) ∖ W
  Rational dummy_a;
  Rational dummy_b;
  VertexSet w;
};

struct FillResult {
  std::vector<PartialEmbedding> embeddings;
  FillPlan plan;
};

/// Mutually disjoint (r_i ↪ X*, V(T_i) ↪ (C ∪ D) ∖ U)-embeddings of all trees.
FillResult fill_pair(const Graph& g, const VertexSet& c, const VertexSet& d, const std::vector<RootedTree>& trees,
                     const VertexSet& u, const VertexSet& x_star, const Rational& eps, const Rational& beta,
                     const EmbedOptions& opt = {});

/// (r ↪ v0, even ↪ A ∖ U_A, odd ↪ B ∖ U_B) in an (ε, d)-super-regular pair;
/// ℓ is taken as min(|A|, |B|).
PartialEmbedding embed_superregular(const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& u_a,
                                    const VertexSet& u_b, const RootedTree& t, Vertex v0, const Rational& eps,
                                    const Rational& d, const EmbedOptions& opt = {});

/// Embeds T − r into V(M) with r ↪ v0, spreading the components of T − r over
/// the pairs so that |C ∩ φ(T)| + f_CD = |D ∩ φ(T)| ± τk for every pair.
/// `f` has one entry per pair. ν is read off the matching as ℓ/k.
///
/// Components are taken by ascending root id. Each goes to the pair with the
/// most free room that fits it, oriented so that the running discrepancy moves
/// towards zero; since every component has order ≤ τk the discrepancy never
/// leaves [−τk, τk].
PartialEmbedding embed_balanced(const Graph& g, Vertex v0, const RegularizedMatching& m, const std::vector<long long>& f,
                                const RootedTree& t, const Rational& tau, long long k, const EmbedOptions& opt = {});

/// (r ↪ v0, T − r ↪ V(M) ∖ U). Component roots go to neighbours of v0 on the
/// side of a pair that is not in the cover F; the pair with the most such
/// free neighbours is tried first.
PartialEmbedding embed_oneside(const Graph& g, Vertex v0, const RegularizedMatching& m,
                               const std::vector<VertexSet>& cover, const VertexSet& u, const RootedTree& t,
                               const Rational& tau, long long k, const EmbedOptions& opt = {});

/// Mutually disjoint (r_i ↪ U*, V(T_i) ∖ {r_i} ↪ V(H) ∖ U)-embeddings. Each
/// tree grows inside a spot that witnesses its root (spot meeting U in at most
/// γ²k vertices). AvoidancePropertyViolation when more than εk vertices of E
/// have no witness, or too few roots remain.
std::vector<PartialEmbedding> embed_avoiding_forest(const Graph& h, const std::vector<DenseSpot>& spots,
                                                    const VertexSet& e, const std::vector<RootedTree>& trees,
                                                    const VertexSet& u, const VertexSet& u_star,
                                                    const Rational& lambda, const Rational& eps,
                                                    const Rational& gamma, long long k, const EmbedOptions& opt = {});

/// Mutually disjoint (r_i ↪ U*, even ↪ V1 ∖ U, odd ↪ V2 ∖ U)-embeddings avoiding
/// B = shadow(U, ζk/2). NowhereDensePropertyViolation when |B| > 32Q²γk/ζ.
std::vector<PartialEmbedding> embed_nowheredense_forest(const Graph& h, const std::vector<RootedTree>& trees,
                                                        const VertexSet& v1, const VertexSet& v2,
                                                        const VertexSet& u, const VertexSet& u_star,
                                                        const Rational& q, const Rational& gamma,
                                                        const Rational& zeta, long long k,
                                                        const EmbedOptions& opt = {});

struct ReservationResult {
  std::vector<PartialEmbedding> embeddings;
  VertexSet reserved;  // the set C
  long long slack = 0;  // ⌈k^{3/4}⌉
  int attempts = 0;     // runs sampled, the accepted one included
  /// Per tracked set: |P_j ∩ images| − |P_j ∩ reserved| in the accepted run.
  std::vector<long long> excess;
};

inline constexpr int kDefaultRetries = 16;

/// Paired-candidate embedding: every tree vertex is offered two free
/// candidates (two smallest ids in the admissible neighbourhood), a fair coin
/// picks the image and the other joins the reserve C. A run is accepted when
/// |P_j ∩ images| ≤ |P_j ∩ C| + ⌈k^{3/4}⌉ for all j; otherwise it is
/// resampled from Rng::stream(seed, attempt), up to `retries` more times,
/// then StochasticFailure.
ReservationResult embed_shrubs_with_reservation(const Graph& h, const VertexSet& x_star, const VertexSet& x1,
                                                const VertexSet& x2, const std::vector<VertexSet>& p,
                                                const std::vector<RootedTree>& trees, long long k,
                                                std::uint64_t seed, int retries = kDefaultRetries);

enum class ExpanderTrust { Trusted, Check };

/// (r ↪ U*, even ∖ {r} ↪ V2 ∖ U, odd ↪ V3 ∖ U) plus a reserve C, in a
/// (γk, γ)-nowhere-dense host. With ExpanderTrust::Check the host is searched
/// for a dense spot first (heuristic above a few vertices) and a found spot is
/// a PreconditionError; with Trusted the caller vouches for it.
/// B = shadow(U, δk/4) must satisfy |B| ≤ δk/9, else NowhereDensePropertyViolation.
ReservationResult embed_shrub_expander(const Graph& h, const VertexSet& v2, const VertexSet& v3, const VertexSet& u,
                                       const VertexSet& u_star, const std::vector<VertexSet>& p, const RootedTree& t,
                                       const Rational& delta, const Rational& gamma, long long k, std::uint64_t seed,
                                       int retries = kDefaultRetries, ExpanderTrust trust = ExpanderTrust::Trusted,
                                       const EmbedOptions& opt = {});

}  // namespace lks
