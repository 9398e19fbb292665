#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "embed_common.hpp"
#include "lks/embed_kit.hpp"

namespace lks {

namespace {

using detail::Mask;
using detail::size_of;

struct Component {
  Vertex top;                  // child of the root
  std::vector<Vertex> order;   // BFS order within the component
  long long even = 0;          // same class as `top`
  long long odd = 0;
};

std::vector<Component> components_below_root(const RootedTree& t) {
  std::vector<Component> out;
  for (Vertex c : t.children(t.root())) {
    Component comp{c, {}, 0, 0};
    comp.order.push_back(c);
    for (std::size_t i = 0; i < comp.order.size(); ++i) {
      for (Vertex ch : t.children(comp.order[i])) comp.order.push_back(ch);
    }
    for (Vertex v : comp.order) ((t.depth(v) - t.depth(c)) % 2 == 0 ? comp.even : comp.odd) += 1;
    out.push_back(std::move(comp));
  }
  return out;
}

void check_matching_shape(const detail::Hypotheses& hyp, const Graph& g, const RegularizedMatching& m, Vertex v0) {
  hyp.structural(g.valid(v0), "v0 outside the host");
  std::vector<Vertex> seen;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const auto& p = m.pairs[i];
    hyp.structural(p.a.within(g.size()) && p.b.within(g.size()), "pair " + std::to_string(i) + " outside the host");
    hyp.structural(!p.a.empty() && p.a.size() == p.b.size(), "pair " + std::to_string(i) + " is unbalanced or empty");
    seen.insert(seen.end(), p.a.begin(), p.a.end());
    seen.insert(seen.end(), p.b.begin(), p.b.end());
  }
  hyp.structural(VertexSet::from(seen).size() == seen.size(), "pairs of the matching overlap");
}

/// 4(ε + τ/ν)/(d − 2ε) with ν = ℓ/k; nullopt when d ≤ 2ε or ℓ = 0.
std::optional<Rational> loss_factor(const RegularizedMatching& m, const Rational& tau, long long k) {
  if (m.d - 2 * m.eps <= 0 || m.ell <= 0) return std::nullopt;
  Rational nu = Rational(m.ell) / Rational(k);
  return 4 * (m.eps + tau / nu) / (m.d - 2 * m.eps);
}

long long free_count(const detail::Occupancy& occ, const VertexSet& s, const Mask* blocked = nullptr) {
  long long c = 0;
  for (Vertex v : s) {
    if (occ.free(v) && (blocked == nullptr || !(*blocked)[static_cast<std::size_t>(v)])) ++c;
  }
  return c;
}

}  // namespace

PartialEmbedding embed_balanced(const Graph& g, Vertex v0, const RegularizedMatching& m, const std::vector<long long>& f,
                                const RootedTree& t, const Rational& tau, long long k, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_balanced", opt.enforce_hypotheses);
  check_matching_shape(hyp, g, m, v0);
  hyp.structural(k >= 1 && tau > 0, "need k >= 1 and tau > 0");
  if (f.size() != m.pairs.size()) throw InputError("embed_balanced: one offset per pair is required");
  const Rational tk = tau * Rational(k);
  for (long long x : f) {
    if (Rational(x < 0 ? -x : x) > tk) throw InputError("embed_balanced: offset " + std::to_string(x) + " outside [-tau k, tau k]");
  }
  const VertexSet vm = m.vertices();
  for (Vertex v : vm) hyp.structural(g.has_edge(v0, v), "V(M) must lie in the neighbourhood of v0", v);
  const auto comps = components_below_root(t);
  for (const auto& c : comps) {
    hyp.structural(Rational(static_cast<std::int64_t>(c.order.size())) <= tk,
                   "component of T - r larger than tau k", c.top);
  }
  auto loss = loss_factor(m, tau, k);
  hyp.quantitative(loss.has_value() && Rational(t.size()) <= (1 - *loss) * size_of(vm),
                   "tree larger than (1 - 4(eps + tau/nu)/(d - 2 eps)) |V(M)|");

  PartialEmbedding e(t.size());
  detail::Occupancy occ(g.size());
  e.map[static_cast<std::size_t>(t.root())] = v0;
  occ.take(v0);
  const std::size_t np = m.pairs.size();
  std::vector<Mask> a_mask, b_mask;
  for (const auto& p : m.pairs) {
    a_mask.push_back(detail::mask_of(g.size(), p.a));
    b_mask.push_back(detail::mask_of(g.size(), p.b));
  }
  std::vector<long long> disc(f.begin(), f.end());  // f + |C ∩ φ| − |D ∩ φ|

  for (const auto& comp : comps) {
    const long long shift = comp.even - comp.odd;  // effect on disc when `top` lands in C
    std::vector<std::size_t> order(np);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<long long> room(np);
    for (std::size_t i = 0; i < np; ++i) room[i] = free_count(occ, m.pairs[i].a) + free_count(occ, m.pairs[i].b);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return room[x] > room[y]; });

    std::optional<FailureEvidence> last;
    bool placed = false;
    for (std::size_t i : order) {
      const long long in_c = disc[i] + shift, in_d = disc[i] - shift;
      const bool prefer_c = std::llabs(in_c) <= std::llabs(in_d);
      for (bool top_in_c : {prefer_c, !prefer_c}) {
        const long long next = top_in_c ? in_c : in_d;
        if (Rational(std::llabs(next)) > tk) continue;
        const VertexSet& home = top_in_c ? m.pairs[i].a : m.pairs[i].b;
        const VertexSet& away = top_in_c ? m.pairs[i].b : m.pairs[i].a;
        if (free_count(occ, home) < comp.even || free_count(occ, away) < comp.odd) continue;
        const Mask& hm = top_in_c ? a_mask[i] : b_mask[i];
        const Mask& am = top_in_c ? b_mask[i] : a_mask[i];
        last = detail::greedy_extend(g, t, e, occ, comp.order, [&](Vertex v) {
          return detail::Target{(t.depth(v) - t.depth(comp.top)) % 2 == 0 ? &hm : &am, nullptr};
        });
        if (!last) {
          disc[i] = next;
          placed = true;
          break;
        }
      }
      if (placed) break;
    }
    if (!placed) {
      detail::fail_embed("embed_balanced (component at " + std::to_string(comp.top) + ")",
                         last ? *last : detail::root_evidence(comp.top, 0));
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    if (Rational(std::llabs(disc[i])) > tk) throw ContractViolation("embed_balanced: discrepancy bound broken");
  }
  e.constraints.push_back({"root", VertexSet{t.root()}, VertexSet{v0}});
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (v != t.root()) rest.push_back(v);
  }
  e.constraints.push_back({"body", VertexSet::from(rest), vm});
  return e;
}

PartialEmbedding embed_oneside(const Graph& g, Vertex v0, const RegularizedMatching& m,
                               const std::vector<VertexSet>& cover, const VertexSet& u, const RootedTree& t,
                               const Rational& tau, long long k, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_oneside", opt.enforce_hypotheses);
  check_matching_shape(hyp, g, m, v0);
  hyp.structural(k >= 1 && tau > 0, "need k >= 1 and tau > 0");
  hyp.structural(u.within(g.size()), "U outside the host");
  hyp.structural(matching_cover_check(m, cover), "F is not a cover of the matching");
  const Rational tk = tau * Rational(k);
  const auto comps = components_below_root(t);
  for (const auto& c : comps) {
    hyp.structural(Rational(static_cast<std::int64_t>(c.order.size())) <= tk,
                   "component of T - r larger than tau k", c.top);
  }
  const VertexSet vm = m.vertices();
  std::vector<Vertex> covered_ids;
  for (const auto& s : cover) covered_ids.insert(covered_ids.end(), s.begin(), s.end());
  const VertexSet covered = VertexSet::from(std::move(covered_ids));
  auto loss = loss_factor(m, tau, k);
  const long long open_deg = g.degree_into(v0, set_difference(vm, covered));
  hyp.quantitative(loss.has_value() &&
                       Rational(t.size()) + size_of(u) <= Rational(open_deg) - *loss * size_of(vm),
                   "v(T) + |U| exceeds deg(v0, V(M) minus the cover) minus the regularity loss");

  // (open side, partner side) for every pair with a side outside the cover
  struct Lane {
    VertexSet open, partner;
    Mask open_mask, partner_mask, v0_mask;
  };
  std::vector<Lane> lanes;
  for (const auto& p : m.pairs) {
    for (bool first : {true, false}) {
      const VertexSet& side = first ? p.a : p.b;
      const VertexSet& other = first ? p.b : p.a;
      if (std::find(cover.begin(), cover.end(), side) != cover.end()) continue;
      Lane lane;
      lane.open = set_difference(side, u);
      lane.partner = set_difference(other, u);
      lane.open_mask = detail::mask_of(g.size(), lane.open);
      lane.partner_mask = detail::mask_of(g.size(), lane.partner);
      lane.v0_mask = detail::mask_of(g.size(), g.neighbours_in(v0, lane.open));
      lanes.push_back(std::move(lane));
    }
  }

  PartialEmbedding e(t.size());
  detail::Occupancy occ(g.size());
  e.map[static_cast<std::size_t>(t.root())] = v0;
  occ.take(v0);
  for (const auto& comp : comps) {
    std::vector<std::size_t> order(lanes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<long long> reach(lanes.size());
    for (std::size_t i = 0; i < lanes.size(); ++i) {
      reach[i] = free_count(occ, g.neighbours_in(v0, lanes[i].open));
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return reach[x] > reach[y]; });
    std::optional<FailureEvidence> last;
    bool placed = false;
    for (std::size_t i : order) {
      const Lane& lane = lanes[i];
      if (reach[i] == 0 || free_count(occ, lane.open) < comp.even || free_count(occ, lane.partner) < comp.odd) continue;
      last = detail::greedy_extend(g, t, e, occ, comp.order, [&](Vertex v) {
        if (v == comp.top) return detail::Target{&lane.v0_mask, nullptr};
        return detail::Target{(t.depth(v) - t.depth(comp.top)) % 2 == 0 ? &lane.open_mask : &lane.partner_mask,
                              nullptr};
      });
      if (!last) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      detail::fail_embed("embed_oneside (component at " + std::to_string(comp.top) + ")",
                         last ? *last : detail::root_evidence(comp.top, 0));
    }
  }
  e.constraints.push_back({"root", VertexSet{t.root()}, VertexSet{v0}});
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (v != t.root()) rest.push_back(v);
  }
  e.constraints.push_back({"body", VertexSet::from(rest), set_difference(vm, u)});
  return e;
}

}  // namespace lks
