#include <algorithm>

#include "embed_common.hpp"
#include "lks/embed_kit.hpp"

namespace lks {

namespace {

using detail::Mask;
using detail::size_of;

long long total_order(const std::vector<RootedTree>& trees) {
  long long total = 0;
  for (const auto& t : trees) total += t.size();
  return total;
}

std::vector<Vertex> non_root_ids(const RootedTree& t) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (v != t.root()) out.push_back(v);
  }
  return out;
}

/// min over x ∈ X of deg(x, Y); vacuous (no constraint) for empty X.
bool mindeg_at_least(const Graph& g, const VertexSet& x, const VertexSet& y, const Rational& bound) {
  for (Vertex v : x) {
    if (Rational(g.degree_into(v, y)) < bound) return false;
  }
  return true;
}

}  // namespace

std::vector<PartialEmbedding> embed_avoiding_forest(const Graph& h, const std::vector<DenseSpot>& spots,
                                                    const VertexSet& e, const std::vector<RootedTree>& trees,
                                                    const VertexSet& u, const VertexSet& u_star,
                                                    const Rational& lambda, const Rational& eps,
                                                    const Rational& gamma, long long k, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_avoiding_forest", opt.enforce_hypotheses);
  hyp.structural(k >= 1, "k must be positive");
  hyp.structural(e.within(h.size()) && u.within(h.size()), "E or U outside the host");
  hyp.structural(is_subset(u_star, e), "U* must lie in E");
  const Rational gk = gamma * Rational(k);
  for (std::size_t i = 0; i < spots.size(); ++i) {
    const auto& s = spots[i];
    hyp.structural(spot_violations(h, s).empty(), "spot " + std::to_string(i) + " is not a dense spot of the host");
    hyp.structural(s.density() > gamma, "spot " + std::to_string(i) + " has density not above gamma");
    for (Vertex v : s.vertices()) {
      hyp.structural(Rational(s.spot_degree(v)) > gk, "spot " + std::to_string(i) + " has degree not above gamma k", v);
    }
  }
  hyp.quantitative(eps > 0 && gamma > 0 && 2 * eps < 1 && 2 * gamma < 1, "need eps, gamma in (0, 1/2)");
  hyp.quantitative(gamma * gamma > eps, "need gamma^2 > eps");
  hyp.quantitative(2 * Rational(total_order(trees)) <= gk, "trees larger than gamma k / 2 in total");
  hyp.quantitative(size_of(u) <= lambda * Rational(k), "|U| above lambda k");
  hyp.quantitative(size_of(u_star) >= eps * Rational(k) + Rational(static_cast<std::int64_t>(trees.size())),
                   "|U*| below eps k + number of trees");
  if (trees.empty()) return {};

  const VertexSet bad = exceptional_vertices(spots, e, u, gamma, k);
  if (size_of(bad) > eps * Rational(k)) {
    throw AvoidancePropertyViolation("embed_avoiding_forest: " + std::to_string(bad.size()) +
                                         " vertices of E have no witnessing spot, more than eps k",
                                     bad.ids());
  }
  const VertexSet roots = set_difference(u_star, bad);
  if (roots.size() < trees.size()) {
    throw AvoidancePropertyViolation("embed_avoiding_forest: too few root candidates outside the exceptional set",
                                     set_intersection(bad, u_star).ids());
  }

  const Rational cap = gamma * gamma * Rational(k);
  detail::Occupancy occ(h.size());
  std::vector<PartialEmbedding> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out.emplace_back(trees[i].size());
    out[i].map[static_cast<std::size_t>(trees[i].root())] = roots[i];
    occ.take(roots[i]);
  }
  const VertexSet outside_u = set_difference(VertexSet::range(h.size()), u);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const RootedTree& t = trees[i];
    const Vertex r = roots[i];
    const DenseSpot* witness = nullptr;
    for (const auto& s : spots) {
      VertexSet vs = s.vertices();
      if (vs.contains(r) && size_of(set_intersection(vs, u)) <= cap) {
        witness = &s;
        break;
      }
    }
    if (witness == nullptr) throw ContractViolation("embed_avoiding_forest: root outside the exceptional set has no spot");
    const VertexSet room = set_difference(witness->vertices(), u);
    const Mask mask = detail::mask_of(h.size(), room);
    auto order = detail::bfs_without(t, [&](Vertex v) { return v == t.root(); });
    auto stuck = detail::greedy_extend(h, t, out[i], occ, order, [&](Vertex) { return detail::Target{&mask, nullptr}; });
    if (stuck) detail::fail_embed("embed_avoiding_forest (tree " + std::to_string(i) + ")", *stuck);
    out[i].constraints.push_back({"root", VertexSet{t.root()}, u_star});
    out[i].constraints.push_back({"body", VertexSet::from(non_root_ids(t)), outside_u});
    out[i].constraints.push_back({"spot", VertexSet::from(non_root_ids(t)), room});
  }
  return out;
}

std::vector<PartialEmbedding> embed_nowheredense_forest(const Graph& h, const std::vector<RootedTree>& trees,
                                                        const VertexSet& v1, const VertexSet& v2,
                                                        const VertexSet& u, const VertexSet& u_star,
                                                        const Rational& q, const Rational& gamma,
                                                        const Rational& zeta, long long k, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_nowheredense_forest", opt.enforce_hypotheses);
  hyp.structural(k >= 1, "k must be positive");
  hyp.structural(v1.within(h.size()) && v2.within(h.size()) && u.within(h.size()), "sets outside the host");
  hyp.structural(is_subset(u_star, v1), "U* must lie in V1");
  const Rational kk(k);
  const Rational shadow_bound = 32 * q * q * gamma / zeta * kk;
  hyp.quantitative(q >= 1 && gamma > 0 && gamma < 1 && zeta > 0 && zeta < 1, "need Q >= 1 and gamma, zeta in (0, 1)");
  hyp.quantitative(128 * q * gamma <= zeta * zeta, "need 128 Q gamma <= zeta^2");
  hyp.quantitative(4 * Rational(total_order(trees)) < zeta * kk, "trees not smaller than zeta k / 4 in total");
  hyp.quantitative(size_of(u) < q * kk, "|U| not below Q k");
  hyp.quantitative(size_of(u_star) > shadow_bound + Rational(static_cast<std::int64_t>(trees.size())),
                   "|U*| not above 32 Q^2 gamma k / zeta + number of trees");
  hyp.quantitative(mindeg_at_least(h, v1, v2, zeta * kk) && mindeg_at_least(h, v2, v1, zeta * kk),
                   "mindeg between V1 and V2 below zeta k");
  if (trees.empty()) return {};

  const VertexSet b = shadow(h, u, zeta * kk / 2);
  if (size_of(b) > shadow_bound) {
    throw NowhereDensePropertyViolation("embed_nowheredense_forest: shadow of U has " + std::to_string(b.size()) +
                                            " vertices, above 32 Q^2 gamma k / zeta",
                                        b.size());
  }
  const VertexSet blocked = set_union(b, u);
  const VertexSet roots = set_difference(u_star, blocked);
  if (roots.size() < trees.size()) {
    detail::fail_embed("embed_nowheredense_forest: too few roots outside the shadow",
                       detail::root_evidence(trees[roots.size()].root(), static_cast<long long>(roots.size())));
  }
  const VertexSet side1 = set_difference(v1, blocked), side2 = set_difference(v2, blocked);
  const Mask m1 = detail::mask_of(h.size(), side1), m2 = detail::mask_of(h.size(), side2);
  detail::Occupancy occ(h.size());
  std::vector<PartialEmbedding> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out.emplace_back(trees[i].size());
    out[i].map[static_cast<std::size_t>(trees[i].root())] = roots[i];
    occ.take(roots[i]);
  }
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const RootedTree& t = trees[i];
    auto order = detail::bfs_without(t, [&](Vertex v) { return v == t.root(); });
    auto stuck = detail::greedy_extend(h, t, out[i], occ, order, [&](Vertex v) {
      return detail::Target{t.depth(v) % 2 == 0 ? &m1 : &m2, nullptr};
    });
    if (stuck) detail::fail_embed("embed_nowheredense_forest (tree " + std::to_string(i) + ")", *stuck);
    ParityClasses pc = parity_classes(t);
    out[i].constraints.push_back({"root", VertexSet{t.root()}, u_star});
    out[i].constraints.push_back({"even", pc.even, set_difference(v1, u)});
    out[i].constraints.push_back({"odd", pc.odd, set_difference(v2, u)});
    out[i].constraints.push_back({"outside_shadow", VertexSet::range(t.size()), set_difference(VertexSet::range(h.size()), b)});
  }
  return out;
}

}  // namespace lks
