#include "embed_common.hpp"
#include "lks/embed_kit.hpp"

namespace lks {

PartialEmbedding embed_greedy_dense(const Graph& g, const VertexSet& a, const VertexSet& b, const RootedTree& t,
                                    long long k) {
  const std::string who = "embed_greedy_dense";
  if (k < 1) throw PreconditionError(who + ": k must be at least 1");
  if (t.size() != k) {
    throw PreconditionError(who + ": tree has order " + std::to_string(t.size()) + ", expected k = " +
                            std::to_string(k));
  }
  if (!a.within(g.size()) || !b.within(g.size())) throw InputError(who + ": A or B lies outside the host");
  if (a.empty()) throw PreconditionError(who + ": A is empty");
  for (Vertex v : a) {
    if (b.contains(v)) throw PreconditionError(who + ": vertex lies in both A and B", v);
  }
  for (Vertex v : a) {
    if (2LL * g.degree_into(v, b) < k) throw PreconditionError(who + ": vertex of A has fewer than k/2 neighbours in B", v);
    if (g.degree(v) < k) throw PreconditionError(who + ": vertex of A has degree below k", v);
  }
  for (Vertex v : b) {
    if (2LL * g.degree_into(v, a) < k) throw PreconditionError(who + ": vertex of B has fewer than k/2 neighbours in A", v);
  }

  PartialEmbedding e(t.size());
  if (k == 1) {
    e.map[0] = a.front();
    e.constraints.push_back({"Y_to_A", VertexSet{t.root()}, a});
    return e;
  }

  ParityClasses pc = parity_classes(t);
  const bool x_even = pc.even.size() >= pc.odd.size();
  const VertexSet& x = x_even ? pc.even : pc.odd;
  const VertexSet& y = x_even ? pc.odd : pc.even;
  std::vector<Vertex> leaves;
  for (Vertex v : x) {
    if (t.is_leaf(v)) leaves.push_back(v);
  }
  const VertexSet w = VertexSet::from(leaves);
  const VertexSet x_core = set_difference(x, w);
  e.constraints.push_back({"Y_to_A", y, a});
  e.constraints.push_back({"X_minus_W_to_B", x_core, b});

  Vertex start = -1;
  for (Vertex v : t.bfs_order()) {
    if (!w.contains(v)) {
      start = v;
      break;
    }
  }
  const RootedTree tr = t.rerooted(start);
  detail::Occupancy occ(g.size());
  const detail::Mask in_a = detail::mask_of(g.size(), a);
  const detail::Mask in_b = detail::mask_of(g.size(), b);
  const detail::Mask anywhere(static_cast<std::size_t>(g.size()), 1);

  Vertex first = y.contains(start) ? a.front() : (b.empty() ? -1 : b.front());
  if (first < 0) throw ContractViolation(who + ": B is empty although T - W meets the class X");
  e.map[static_cast<std::size_t>(start)] = first;
  occ.take(first);

  auto core = detail::bfs_without(tr, [&](Vertex v) { return v == start || w.contains(v); });
  auto stuck = detail::greedy_extend(g, tr, e, occ, core, [&](Vertex v) {
    return detail::Target{y.contains(v) ? &in_a : &in_b, nullptr};
  });
  if (stuck) throw ContractViolation(who + ": greedy step failed under verified hypotheses, " + detail::describe(*stuck));
  stuck = detail::greedy_extend(g, tr, e, occ, leaves, [&](Vertex) { return detail::Target{&anywhere, nullptr}; });
  if (stuck) throw ContractViolation(who + ": leaf step failed under verified hypotheses, " + detail::describe(*stuck));
  return e;
}

}  // namespace lks
