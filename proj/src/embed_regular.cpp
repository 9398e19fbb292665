#include <algorithm>
#include <numeric>

#include "embed_common.hpp"
#include "lks/embed_kit.hpp"

namespace lks {

namespace {

using detail::Mask;
using detail::size_of;

/// Vertices of `from` with at least (3/2)β|to| neighbours in `to`.
VertexSet typical(const Graph& g, const VertexSet& from, const VertexSet& to, const Rational& beta) {
  std::vector<Vertex> out;
  const Rational need = Rational(3, 2) * beta * size_of(to);
  for (Vertex v : from) {
    if (Rational(g.degree_into(v, to)) >= need) out.push_back(v);
  }
  return VertexSet::from(std::move(out));
}

struct Sides {
  VertexSet even;  // the root's class goes here
  VertexSet odd;
};

/// Embeds t with the root on the first free typical vertex of `roots` and the
/// rest greedily, typical vertices first. Returns evidence on failure (nothing
/// is left occupied in that case).
std::optional<FailureEvidence> embed_in_sides(const Graph& g, const RootedTree& t, PartialEmbedding& e,
                                              detail::Occupancy& occ, const VertexSet& roots, const Sides& s,
                                              const Rational& beta) {
  const int n = g.size();
  const VertexSet even_typ = typical(g, s.even, s.odd, beta);
  const VertexSet odd_typ = typical(g, s.odd, s.even, beta);
  const Mask even_pref = detail::mask_of(n, even_typ), odd_pref = detail::mask_of(n, odd_typ);
  const Mask even_all = detail::mask_of(n, s.even), odd_all = detail::mask_of(n, s.odd);

  std::vector<Vertex> candidates;
  for (const VertexSet* pool : {&even_typ, &s.even}) {
    for (Vertex v : set_intersection(*pool, roots)) {
      if (occ.free(v) && std::find(candidates.begin(), candidates.end(), v) == candidates.end()) {
        candidates.push_back(v);
      }
    }
  }
  if (candidates.empty()) return detail::root_evidence(t.root(), 0);
  auto order = detail::bfs_without(t, [&](Vertex v) { return v == t.root(); });
  auto target = [&](Vertex v) {
    return t.depth(v) % 2 == 0 ? detail::Target{&even_pref, &even_all} : detail::Target{&odd_pref, &odd_all};
  };
  std::optional<FailureEvidence> last;
  for (Vertex r : candidates) {
    e.map[static_cast<std::size_t>(t.root())] = r;
    occ.take(r);
    last = detail::greedy_extend(g, t, e, occ, order, target);
    if (!last) return std::nullopt;
    occ.release(r);
    e.map[static_cast<std::size_t>(t.root())] = -1;
  }
  return last;
}

void add_side_constraints(PartialEmbedding& e, const RootedTree& t, const Sides& s) {
  ParityClasses pc = parity_classes(t);
  e.constraints.push_back({"even", pc.even, s.even});
  e.constraints.push_back({"odd", pc.odd, s.odd});
}

void check_pair_shape(const detail::Hypotheses& hyp, const Graph& g, const VertexSet& c, const VertexSet& d) {
  hyp.structural(c.within(g.size()) && d.within(g.size()), "pair lies outside the host");
  hyp.structural(!c.empty() && !d.empty(), "pair sides must be non-empty");
  hyp.structural(disjoint(c, d), "pair sides intersect");
}

}  // namespace

PartialEmbedding embed_in_regular_pair(const Graph& g, const VertexSet& c, const VertexSet& d, const VertexSet& x,
                                       const VertexSet& y, const VertexSet& x_star, const RootedTree& t,
                                       const Rational& eps, const Rational& beta, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_in_regular_pair", opt.enforce_hypotheses);
  check_pair_shape(hyp, g, c, d);
  hyp.structural(is_subset(x, c), "X must lie in C");
  hyp.structural(is_subset(y, d), "Y must lie in D");
  hyp.structural(is_subset(x_star, x), "X* must lie in X");
  const Rational ell = size_of(c);
  hyp.quantitative(c.size() == d.size(), "|C| and |D| differ");
  hyp.quantitative(eps > 0 && beta > 2 * eps, "need beta > 2 eps > 0");
  hyp.quantitative(degree_and_density(g, c, d).density >= 3 * beta, "density of (C, D) below 3 beta");
  hyp.quantitative(beta > 0 && size_of(x) >= 4 * eps / beta * ell && size_of(y) >= 4 * eps / beta * ell,
                   "X or Y smaller than 4 (eps/beta) l");
  hyp.quantitative(size_of(x_star) > beta * ell / 2, "|X*| not above beta l / 2");
  hyp.quantitative(Rational(t.size()) <= eps * ell, "tree larger than eps l");

  PartialEmbedding e(t.size());
  detail::Occupancy occ(g.size());
  Sides s{x, y};
  // Typical vertices only; the greedy fallback to the whole side is disabled here.
  const VertexSet x_typ = typical(g, x, y, beta);
  const VertexSet y_typ = typical(g, y, x, beta);
  const Mask xm = detail::mask_of(g.size(), x_typ), ym = detail::mask_of(g.size(), y_typ);
  VertexSet roots = set_intersection(x_star, x_typ);
  if (roots.empty()) {
    detail::fail_embed("embed_in_regular_pair: no typical vertex in X*", detail::root_evidence(t.root(), 0));
  }
  e.map[static_cast<std::size_t>(t.root())] = roots.front();
  occ.take(roots.front());
  auto order = detail::bfs_without(t, [&](Vertex v) { return v == t.root(); });
  auto stuck = detail::greedy_extend(g, t, e, occ, order, [&](Vertex v) {
    return detail::Target{t.depth(v) % 2 == 0 ? &xm : &ym, nullptr};
  });
  if (stuck) detail::fail_embed("embed_in_regular_pair", *stuck);
  e.constraints.push_back({"root", VertexSet{t.root()}, x_star});
  add_side_constraints(e, t, s);
  return e;
}

FillResult fill_pair(const Graph& g, const VertexSet& c_in, const VertexSet& d_in, const std::vector<RootedTree>& trees,
                     const VertexSet& u, const VertexSet& x_star, const Rational& eps, const Rational& beta,
                     const EmbedOptions& opt) {
  detail::Hypotheses hyp("fill_pair", opt.enforce_hypotheses);
  check_pair_shape(hyp, g, c_in, d_in);
  hyp.structural(c_in.size() == d_in.size(), "|C| and |D| differ");
  hyp.structural(u.within(g.size()), "U lies outside the host");
  hyp.structural(intersection_size(c_in, u) == intersection_size(d_in, u), "|C ∩ U| and |D ∩ U| differ");
  const VertexSet cd = set_union(c_in, d_in);
  hyp.structural(is_subset(x_star, set_difference(cd, u)), "X* must lie in (C ∪ D) minus U");
  const Rational ell = size_of(c_in);
  long long total = 0;
  for (const auto& t : trees) total += t.size();
  hyp.quantitative(eps > 0 && beta > 0 && eps <= beta * beta / 8, "need 0 < eps <= beta^2 / 8");
  hyp.quantitative(degree_and_density(g, c_in, d_in).density >= 3 * beta, "density of (C, D) below 3 beta");
  for (std::size_t i = 0; i < trees.size(); ++i) {
    hyp.quantitative(Rational(trees[i].size()) <= eps * ell, "tree " + std::to_string(i) + " larger than eps l");
  }
  hyp.quantitative(size_of(x_star) >= Rational(total) + 50 * beta * ell, "|X*| below total order + 50 beta l");

  FillResult result;
  FillPlan& plan = result.plan;
  if (trees.empty()) return result;

  VertexSet c = c_in, d = d_in;
  std::int64_t big = static_cast<std::int64_t>(intersection_size(x_star, c));
  std::int64_t m = static_cast<std::int64_t>(intersection_size(x_star, d));
  if (big < m) {
    std::swap(c, d);
    std::swap(big, m);
    plan.sides_swapped = true;
  }

  const std::size_t s = trees.size();
  std::vector<Rational> as(s), bs(s);
  Rational sum_a = 0, sum_b = 0;
  for (std::size_t i = 0; i < s; ++i) {
    ParityClasses pc = parity_classes(trees[i]);
    as[i] = Rational(static_cast<std::int64_t>(pc.even.size()));
    bs[i] = Rational(static_cast<std::int64_t>(pc.odd.size()));
    sum_a += as[i];
    sum_b += bs[i];
  }
  const Rational gamma = sum_b / sum_a;
  const Rational slack_m = Rational(m) - 4 * beta * ell;  // m − 4βℓ
  auto max_entry = [&](const std::vector<std::size_t>& idx) {
    Rational top = 0;
    for (std::size_t i : idx) top = std::max({top, as[i], bs[i]});
    return top;
  };

  std::vector<std::size_t> all(s);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> chosen;  // the set I
  if (slack_m <= 0) {
    plan.fill_case = 1;
  } else if (2 * slack_m >= sum_a + sum_b) {
    plan.fill_case = 2;
    chosen = all;
  } else {
    plan.fill_case = 3;
    Rational k1 = beta * ell / 4;
    if (!hyp.enforced()) k1 = std::max(k1, max_entry(all));
    chosen = split_by_ratio({as, bs, k1, 2 * sum_a / (sum_a + sum_b) * slack_m});
  }

  if (plan.fill_case != 1) {
    Rational ia = 0, ib = 0;
    for (std::size_t i : chosen) {
      ia += as[i];
      ib += bs[i];
    }
    // Dummy pair restoring Σ b : Σ a = γ exactly; the free coordinate is 0.
    const Rational delta = gamma * ia - ib;
    plan.dummy_a = delta < 0 ? -delta / gamma : Rational(0);
    plan.dummy_b = delta > 0 ? delta : Rational(0);
    if (ib + plan.dummy_b != gamma * (ia + plan.dummy_a)) throw ContractViolation("fill_pair: dummy pair misses the ratio");

    std::vector<Rational> xs{plan.dummy_a}, ys{plan.dummy_b};
    for (std::size_t i : chosen) {
      xs.push_back(as[i]);
      ys.push_back(bs[i]);
    }
    const Rational family_a = ia + plan.dummy_a;
    std::vector<std::size_t> j1;
    if (family_a > 0) {
      Rational k2 = std::max({beta * ell / 2, plan.dummy_a, plan.dummy_b});
      if (!hyp.enforced()) k2 = std::max(k2, max_entry(chosen));
      Rational target = std::min(sum_a / (sum_a + sum_b) * slack_m, family_a);
      j1 = split_by_ratio({xs, ys, k2, target});
    }
    std::vector<char> in_i1(s, 0);
    for (std::size_t j : j1) {
      if (j == 0) continue;
      in_i1[chosen[j - 1]] = 1;
    }
    for (std::size_t i : chosen) (in_i1[i] ? plan.i1 : plan.i2).push_back(i);
  }
  {
    std::vector<char> in_chosen(s, 0);
    for (std::size_t i : chosen) in_chosen[i] = 1;
    for (std::size_t i = 0; i < s; ++i) {
      if (!in_chosen[i]) plan.rest.push_back(i);
    }
  }

  const VertexSet cx = set_intersection(c, x_star);
  const VertexSet dx = set_intersection(d, x_star);
  plan.w = VertexSet::from(std::vector<Vertex>(cx.begin(), cx.begin() + static_cast<std::ptrdiff_t>(m)));
  const VertexSet c_rest = set_difference(cx, plan.w);
  const VertexSet d_outer = set_difference(d, set_union(x_star, u));

  if (hyp.enforced()) {
    auto sum_over = [](const std::vector<std::size_t>& idx, const std::vector<Rational>& v) {
      Rational acc = 0;
      for (std::size_t i : idx) acc += v[i];
      return acc;
    };
    const Rational bl = beta * ell;
    if (sum_over(plan.i1, as) + sum_over(plan.i2, bs) > size_of(plan.w) - 2 * bl ||
        sum_over(plan.i1, bs) + sum_over(plan.i2, as) > size_of(dx) - 2 * bl ||
        sum_over(plan.rest, as) > size_of(c_rest) - 40 * bl || sum_over(plan.rest, bs) > size_of(d_outer) - 40 * bl) {
      throw ContractViolation("fill_pair: planned occupancy exceeds the side capacities");
    }
  }

  std::vector<int> group(s, 2);
  for (std::size_t i : plan.i1) group[i] = 0;
  for (std::size_t i : plan.i2) group[i] = 1;
  const Sides sides[3] = {{plan.w, dx}, {dx, plan.w}, {c_rest, d_outer}};
  const VertexSet body = set_difference(cd, u);
  detail::Occupancy occ(g.size());
  for (std::size_t i = 0; i < s; ++i) {
    PartialEmbedding e(trees[i].size());
    const Sides& sd = sides[group[i]];
    auto stuck = embed_in_sides(g, trees[i], e, occ, sd.even, sd, beta);
    if (stuck) detail::fail_embed("fill_pair (tree " + std::to_string(i) + ")", *stuck);
    e.constraints.push_back({"root", VertexSet{trees[i].root()}, x_star});
    e.constraints.push_back({"body", VertexSet::range(trees[i].size()), body});
    add_side_constraints(e, trees[i], sd);
    result.embeddings.push_back(std::move(e));
  }
  return result;
}

PartialEmbedding embed_superregular(const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& u_a,
                                    const VertexSet& u_b, const RootedTree& t, Vertex v0, const Rational& eps,
                                    const Rational& d, const EmbedOptions& opt) {
  detail::Hypotheses hyp("embed_superregular", opt.enforce_hypotheses);
  check_pair_shape(hyp, g, a, b);
  hyp.structural(is_subset(u_a, a) && is_subset(u_b, b), "U_A must lie in A and U_B in B");
  const VertexSet a_free = set_difference(a, u_a);
  const VertexSet b_free = set_difference(b, u_b);
  hyp.structural(a_free.contains(v0), "v0 must lie in A minus U_A", v0);
  const Rational ell = size_of(a.size() <= b.size() ? a : b);
  hyp.quantitative(eps > 0 && d > 10 * eps, "need d > 10 eps > 0");
  hyp.quantitative(2 * size_of(u_a) <= size_of(a), "|U_A| above |A| / 2");
  hyp.quantitative(4 * size_of(u_b) <= d * size_of(b), "|U_B| above d |B| / 4");
  hyp.quantitative(4 * Rational(t.size()) <= d * ell, "tree larger than d l / 4");

  PartialEmbedding e(t.size());
  detail::Occupancy occ(g.size());
  e.map[static_cast<std::size_t>(t.root())] = v0;
  occ.take(v0);
  const Mask am = detail::mask_of(g.size(), a_free), bm = detail::mask_of(g.size(), b_free);
  auto order = detail::bfs_without(t, [&](Vertex v) { return v == t.root(); });
  auto stuck = detail::greedy_extend(g, t, e, occ, order, [&](Vertex v) {
    return detail::Target{t.depth(v) % 2 == 0 ? &am : &bm, nullptr};
  });
  if (stuck) detail::fail_embed("embed_superregular", *stuck);
  e.constraints.push_back({"root", VertexSet{t.root()}, VertexSet{v0}});
  add_side_constraints(e, t, {a_free, b_free});
  return e;
}

}  // namespace lks
