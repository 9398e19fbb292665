#include <algorithm>

#include "embed_common.hpp"
#include "lks/embed_kit.hpp"
#include "lks/random.hpp"

namespace lks {

namespace {

using detail::Mask;
using detail::size_of;

bool mindeg_at_least(const Graph& g, const VertexSet& x, const VertexSet& y, long long bound, Vertex* failing) {
  for (Vertex v : x) {
    if (g.degree_into(v, y) < bound) {
      *failing = v;
      return false;
    }
  }
  return true;
}

struct Run {
  std::vector<PartialEmbedding> embeddings;
  std::vector<Vertex> reserved;
};

Run sample_run(const Graph& h, const VertexSet& x_star, const Mask& x1, const Mask& x2,
               const std::vector<RootedTree>& trees, Rng& rng) {
  Run run;
  detail::Occupancy occ(h.size());
  auto choose = [&](Vertex a, Vertex b) {
    occ.take(a);
    occ.take(b);
    bool first = rng.coin();
    run.reserved.push_back(first ? b : a);
    return first ? a : b;
  };
  for (const auto& t : trees) run.embeddings.emplace_back(t.size());
  std::size_t next_root = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    while (next_root < x_star.size() && !occ.free(x_star[next_root])) ++next_root;
    std::vector<Vertex> pair;
    for (std::size_t j = next_root; j < x_star.size() && pair.size() < 2; ++j) {
      if (occ.free(x_star[j])) pair.push_back(x_star[j]);
    }
    if (pair.size() < 2) throw ContractViolation("reservation: X* ran out of root pairs");
    run.embeddings[i].map[static_cast<std::size_t>(trees[i].root())] = choose(pair[0], pair[1]);
  }
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const RootedTree& t = trees[i];
    PartialEmbedding& e = run.embeddings[i];
    for (Vertex v : t.bfs_order()) {
      if (v == t.root()) continue;
      const Mask& side = t.depth(v) % 2 == 0 ? x1 : x2;
      Vertex anchor = e[t.parent(v)];
      std::vector<Vertex> pair;
      for (Vertex w : h.neighbours(anchor)) {
        if (side[static_cast<std::size_t>(w)] && occ.free(w)) {
          pair.push_back(w);
          if (pair.size() == 2) break;
        }
      }
      if (pair.size() < 2) {
        throw ContractViolation("reservation: fewer than two free candidates at tree vertex " + std::to_string(v) +
                                " although the degree hypotheses hold");
      }
      e.map[static_cast<std::size_t>(v)] = choose(pair[0], pair[1]);
    }
  }
  return run;
}

}  // namespace

ReservationResult embed_shrubs_with_reservation(const Graph& h, const VertexSet& x_star, const VertexSet& x1,
                                                const VertexSet& x2, const std::vector<VertexSet>& p,
                                                const std::vector<RootedTree>& trees, long long k,
                                                std::uint64_t seed, int retries) {
  const detail::Hypotheses hyp("embed_shrubs_with_reservation", true);
  hyp.structural(k >= 1, "k must be positive");
  hyp.structural(retries >= 0, "retries must be non-negative");
  hyp.structural(x_star.within(h.size()) && x1.within(h.size()) && x2.within(h.size()), "sets outside the host");
  hyp.structural(static_cast<long long>(p.size()) <= k, "more than k tracked sets");
  for (std::size_t j = 0; j < p.size(); ++j) {
    hyp.structural(p[j].within(h.size()), "tracked set " + std::to_string(j) + " outside the host");
    hyp.structural(static_cast<long long>(p[j].size()) <= k, "tracked set " + std::to_string(j) + " larger than k");
  }
  hyp.structural(x_star.size() >= 2 * trees.size(), "|X*| below twice the number of trees");
  long long total = 0;
  for (const auto& t : trees) total += t.size();
  Vertex failing = -1;
  hyp.structural(mindeg_at_least(h, set_union(x1, x_star), x2, 2 * total, &failing),
                 "mindeg(X1 ∪ X*, X2) below twice the total order", failing);
  hyp.structural(mindeg_at_least(h, x2, x1, 2 * total, &failing), "mindeg(X2, X1) below twice the total order", failing);

  ReservationResult result;
  result.slack = ceil_pow_three_quarters(k);
  if (trees.empty()) {
    result.attempts = 0;
    result.excess.assign(p.size(), 0);
    return result;
  }
  const Mask m1 = detail::mask_of(h.size(), x1), m2 = detail::mask_of(h.size(), x2);
  std::vector<long long> excess(p.size(), 0);
  for (int attempt = 0; attempt <= retries; ++attempt) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(attempt));
    Run run = sample_run(h, x_star, m1, m2, trees, rng);
    std::vector<Vertex> used;
    for (const auto& e : run.embeddings) used.insert(used.end(), e.map.begin(), e.map.end());
    const VertexSet images = VertexSet::from(std::move(used));
    const VertexSet reserved = VertexSet::from(run.reserved);
    if (reserved.size() != static_cast<std::size_t>(total) || !disjoint(images, reserved)) {
      throw ContractViolation("reservation: reserve is not a disjoint set of the right size");
    }
    bool ok = true;
    for (std::size_t j = 0; j < p.size(); ++j) {
      excess[j] = static_cast<long long>(intersection_size(p[j], images)) -
                  static_cast<long long>(intersection_size(p[j], reserved));
      if (excess[j] > result.slack) ok = false;
    }
    if (ok) {
      for (std::size_t i = 0; i < trees.size(); ++i) {
        ParityClasses pc = parity_classes(trees[i]);
        auto& e = run.embeddings[i];
        e.constraints.push_back({"root", VertexSet{trees[i].root()}, x_star});
        e.constraints.push_back({"even", set_difference(pc.even, VertexSet{trees[i].root()}), x1});
        e.constraints.push_back({"odd", pc.odd, x2});
      }
      result.embeddings = std::move(run.embeddings);
      result.reserved = reserved;
      result.attempts = attempt + 1;
      result.excess = excess;
      return result;
    }
  }
  throw StochasticFailure("embed_shrubs_with_reservation: every one of " + std::to_string(retries + 1) +
                              " runs overfilled a tracked set",
                          excess);
}

ReservationResult embed_shrub_expander(const Graph& h, const VertexSet& v2, const VertexSet& v3, const VertexSet& u,
                                       const VertexSet& u_star, const std::vector<VertexSet>& p, const RootedTree& t,
                                       const Rational& delta, const Rational& gamma, long long k, std::uint64_t seed,
                                       int retries, ExpanderTrust trust, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_shrub_expander", opt.enforce_hypotheses);
  hyp.structural(k >= 1, "k must be positive");
  hyp.structural(v2.within(h.size()) && v3.within(h.size()) && u.within(h.size()), "sets outside the host");
  hyp.structural(is_subset(u_star, v2), "U* must lie in V2");
  const Rational kk(k);
  hyp.quantitative(gamma > 0 && delta > Rational(300) / kk, "need gamma > 0 and delta > 300 / k");
  // |U| ≤ δk / (24√γ)  ⇔  576 γ |U|² ≤ δ² k²
  hyp.quantitative(576 * gamma * size_of(u) * size_of(u) <= delta * delta * kk * kk, "|U| above delta k / (24 sqrt gamma)");
  hyp.quantitative(4 * size_of(u_star) >= delta * kk, "|U*| below delta k / 4");
  hyp.quantitative(8 * Rational(t.size()) <= delta * kk, "tree larger than delta k / 8");
  hyp.quantitative(static_cast<long long>(p.size()) <= k, "more than k tracked sets");
  for (Vertex x : v2) hyp.quantitative(Rational(h.degree_into(x, v3)) >= delta * kk, "mindeg(V2, V3) below delta k", x);
  for (Vertex x : v3) hyp.quantitative(Rational(h.degree_into(x, v2)) >= delta * kk, "mindeg(V3, V2) below delta k", x);
  if (trust == ExpanderTrust::Check) {
    const std::int64_t m = floor_of(gamma * kk);
    auto verdict = check_nowhere_dense(h, m, gamma);
    hyp.structural(verdict.status != NowhereDenseStatus::SpotWitness, "host contains a (gamma k, gamma)-dense spot");
  }

  const VertexSet b = shadow(h, u, delta * kk / 4);
  if (9 * size_of(b) > delta * kk) {
    throw NowhereDensePropertyViolation("embed_shrub_expander: shadow of U has " + std::to_string(b.size()) +
                                            " vertices, above delta k / 9",
                                        b.size());
  }
  const VertexSet blocked = set_union(b, u);
  ReservationResult r;
  try {
    r = embed_shrubs_with_reservation(h, set_difference(u_star, blocked), set_difference(v2, blocked),
                                      set_difference(v3, blocked), p, {t}, k, seed, retries);
  } catch (const PreconditionError& err) {
    if (hyp.enforced()) throw ContractViolation(std::string("embed_shrub_expander: derived hypothesis failed: ") + err.what());
    throw;
  }
  ParityClasses pc = parity_classes(t);
  auto& e = r.embeddings.front();
  e.constraints.push_back({"root_in_U*", VertexSet{t.root()}, u_star});
  e.constraints.push_back({"even_in_V2_minus_U", set_difference(pc.even, VertexSet{t.root()}), set_difference(v2, u)});
  e.constraints.push_back({"odd_in_V3_minus_U", pc.odd, set_difference(v3, u)});
  return r;
}

}  // namespace lks
