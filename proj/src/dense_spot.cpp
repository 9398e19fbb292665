#include "lks/dense_spot.hpp"

#include <algorithm>
#include <bit>

#include "lks/errors.hpp"
#include "lks/random.hpp"

namespace lks {

int DenseSpot::spot_degree(Vertex v) const {
  int d = 0;
  for (auto [a, b] : edges) d += (a == v || b == v) ? 1 : 0;
  return d;
}

Rational DenseSpot::density() const {
  if (u_side.empty() || w_side.empty()) return Rational(0);
  return Rational(static_cast<std::int64_t>(edges.size()), static_cast<std::int64_t>(u_side.size() * w_side.size()));
}

DenseSpot complete_spot(const Graph& g, const VertexSet& u, const VertexSet& w, long long m, const Rational& gamma) {
  DenseSpot s{u, w, {}, m, gamma};
  for (Vertex a : u) {
    for (Vertex b : g.neighbours_in(a, w)) s.edges.emplace_back(a, b);
  }
  return s;
}

std::vector<std::string> spot_violations(const Graph& g, const DenseSpot& s) {
  std::vector<std::string> out;
  if (s.u_side.empty() || s.w_side.empty()) out.push_back("spot has an empty side");
  if (!s.u_side.within(g.size()) || !s.w_side.within(g.size())) {
    out.push_back("spot vertices outside the host");
    return out;
  }
  if (!disjoint(s.u_side, s.w_side)) out.push_back("spot sides intersect");
  std::vector<int> deg(static_cast<std::size_t>(g.size()), 0);
  auto sorted = s.edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) out.push_back("repeated spot edge");
  for (auto [a, b] : s.edges) {
    if (!s.u_side.contains(a) || !s.w_side.contains(b)) {
      out.push_back("edge " + std::to_string(a) + " " + std::to_string(b) + " does not cross the spot");
      continue;
    }
    if (!g.has_edge(a, b)) {
      out.push_back("edge " + std::to_string(a) + " " + std::to_string(b) + " is not in the host");
      continue;
    }
    ++deg[static_cast<std::size_t>(a)];
    ++deg[static_cast<std::size_t>(b)];
  }
  if (!(s.density() > s.gamma)) out.push_back("density " + to_string(s.density()) + " is not above " + to_string(s.gamma));
  for (Vertex v : s.vertices()) {
    if (deg[static_cast<std::size_t>(v)] <= s.m) {
      out.push_back("vertex " + std::to_string(v) + " has spot degree " + std::to_string(deg[static_cast<std::size_t>(v)]) +
                    " <= " + std::to_string(s.m));
    }
  }
  return out;
}

namespace {

// Using every host edge between U and W only raises density and degrees, so a
// spot exists iff some disjoint labelling (U, W) with all crossing edges works.
// Peeling removes vertices whose crossing degree is at most m until stable.
std::optional<DenseSpot> peel_and_test(const Graph& g, std::vector<char> side, long long m, const Rational& gamma,
                                       bool shrink_on_sparse) {
  // side: 0 absent, 1 in U, 2 in W
  const int n = g.size();
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  auto recompute = [&] {
    for (int v = 0; v < n; ++v) {
      deg[static_cast<std::size_t>(v)] = 0;
      if (!side[static_cast<std::size_t>(v)]) continue;
      for (Vertex w : g.neighbours(v)) {
        char sw = side[static_cast<std::size_t>(w)];
        if (sw && sw != side[static_cast<std::size_t>(v)]) ++deg[static_cast<std::size_t>(v)];
      }
    }
  };
  for (;;) {
    recompute();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (side[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] <= m) {
          char sv = side[static_cast<std::size_t>(v)];
          side[static_cast<std::size_t>(v)] = 0;
          for (Vertex w : g.neighbours(v)) {
            char sw = side[static_cast<std::size_t>(w)];
            if (sw && sw != sv) --deg[static_cast<std::size_t>(w)];
          }
          changed = true;
        }
      }
    }
    long long nu = 0;
    long long nw = 0;
    long long e = 0;
    for (int v = 0; v < n; ++v) {
      if (side[static_cast<std::size_t>(v)] == 1) {
        ++nu;
        e += deg[static_cast<std::size_t>(v)];
      } else if (side[static_cast<std::size_t>(v)] == 2) {
        ++nw;
      }
    }
    if (nu == 0 || nw == 0) return std::nullopt;
    if (Rational(e, nu * nw) > gamma) {
      std::vector<Vertex> us;
      std::vector<Vertex> ws;
      for (int v = 0; v < n; ++v) {
        if (side[static_cast<std::size_t>(v)] == 1) us.push_back(v);
        if (side[static_cast<std::size_t>(v)] == 2) ws.push_back(v);
      }
      return complete_spot(g, VertexSet::from(std::move(us)), VertexSet::from(std::move(ws)), m, gamma);
    }
    if (!shrink_on_sparse) return std::nullopt;
    // Too sparse: drop the vertex of smallest crossing degree and peel again.
    Vertex worst = -1;
    for (int v = 0; v < n; ++v) {
      if (!side[static_cast<std::size_t>(v)]) continue;
      if (worst < 0 || deg[static_cast<std::size_t>(v)] < deg[static_cast<std::size_t>(worst)]) worst = v;
    }
    side[static_cast<std::size_t>(worst)] = 0;
  }
}

std::optional<DenseSpot> exact_search(const Graph& g, long long m, const Rational& gamma) {
  const int n = g.size();
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (Vertex w : g.neighbours(v)) adj[static_cast<std::size_t>(v)] |= 1U << w;
  }
  // Enumerate (U, W) as a pair of disjoint masks with U's lowest vertex below
  // W's lowest vertex (the swap gives the same spot).
  const std::uint32_t full = n == 0 ? 0 : ((1U << n) - 1);
  for (std::uint32_t both = 1; both <= full && both != 0; ++both) {
    if (std::popcount(both) < 2) continue;
    // Split `both` into U and W; iterate submasks containing the lowest bit.
    const std::uint32_t low = both & (~both + 1);
    const std::uint32_t rest = both ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      std::uint32_t um = low | sub;
      std::uint32_t wm = both ^ um;
      if (wm != 0) {
        long long e = 0;
        bool ok = true;
        for (std::uint32_t x = um; x && ok; x &= x - 1) {
          int v = std::countr_zero(x);
          int d = std::popcount(adj[static_cast<std::size_t>(v)] & wm);
          if (d <= m) ok = false;
          e += d;
        }
        for (std::uint32_t x = wm; x && ok; x &= x - 1) {
          int v = std::countr_zero(x);
          if (std::popcount(adj[static_cast<std::size_t>(v)] & um) <= m) ok = false;
        }
        if (ok && Rational(e, static_cast<std::int64_t>(std::popcount(um)) * std::popcount(wm)) > gamma) {
          std::vector<Vertex> us;
          std::vector<Vertex> ws;
          for (int v = 0; v < n; ++v) {
            if (um >> v & 1U) us.push_back(v);
            if (wm >> v & 1U) ws.push_back(v);
          }
          return complete_spot(g, VertexSet::from(std::move(us)), VertexSet::from(std::move(ws)), m, gamma);
        }
      }
      if (sub == 0) break;
    }
  }
  return std::nullopt;
}

std::vector<char> two_colouring(const Graph& g) {
  std::vector<char> side(static_cast<std::size_t>(g.size()), 0);
  for (int s = 0; s < g.size(); ++s) {
    if (side[static_cast<std::size_t>(s)]) continue;
    side[static_cast<std::size_t>(s)] = 1;
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(v)) {
        if (side[static_cast<std::size_t>(w)]) continue;
        side[static_cast<std::size_t>(w)] = static_cast<char>(3 - side[static_cast<std::size_t>(v)]);
        stack.push_back(w);
      }
    }
  }
  return side;
}

bool exact_applies(const Graph& g, const SearchBudget& budget) {
  return g.size() <= std::min(budget.exact_n_bound, kExactSpotHardLimit);
}

}  // namespace

std::optional<DenseSpot> find_dense_spot(const Graph& g, long long m, const Rational& gamma,
                                         const SearchBudget& budget) {
  if (gamma <= 0 || gamma >= 1) throw InputError("dense spot: gamma must lie in (0, 1)");
  if (m < 0) throw InputError("dense spot: m must be non-negative");
  if (exact_applies(g, budget)) return exact_search(g, m, gamma);

  if (auto s = peel_and_test(g, two_colouring(g), m, gamma, true)) return s;
  // Neighbourhood candidates: W = N(v), U = N(W) \ W.
  for (int v = 0; v < g.size(); ++v) {
    if (g.degree(v) <= m) continue;
    std::vector<char> side(static_cast<std::size_t>(g.size()), 0);
    for (Vertex w : g.neighbours(v)) side[static_cast<std::size_t>(w)] = 2;
    for (Vertex w : g.neighbours(v)) {
      for (Vertex x : g.neighbours(w)) {
        if (!side[static_cast<std::size_t>(x)]) side[static_cast<std::size_t>(x)] = 1;
      }
    }
    if (auto s = peel_and_test(g, std::move(side), m, gamma, true)) return s;
  }
  Rng rng(budget.seed);
  for (int trial = 0; trial < budget.bipartition_trials; ++trial) {
    std::vector<char> side(static_cast<std::size_t>(g.size()));
    for (auto& c : side) c = rng.coin() ? 1 : 2;
    if (auto s = peel_and_test(g, std::move(side), m, gamma, true)) return s;
  }
  return std::nullopt;
}

std::string to_string(NowhereDenseStatus s) {
  switch (s) {
    case NowhereDenseStatus::NowhereDenseExact:
      return "NowhereDenseExact";
    case NowhereDenseStatus::SpotWitness:
      return "SpotWitness";
    case NowhereDenseStatus::NoSpotFoundHeuristic:
      break;
  }
  return "NoSpotFoundHeuristic";
}

NowhereDenseVerdict check_nowhere_dense(const Graph& g, long long m, const Rational& gamma,
                                        const SearchBudget& budget) {
  NowhereDenseVerdict v;
  v.witness = find_dense_spot(g, m, gamma, budget);
  if (v.witness) {
    v.status = NowhereDenseStatus::SpotWitness;
  } else {
    v.status = exact_applies(g, budget) ? NowhereDenseStatus::NowhereDenseExact : NowhereDenseStatus::NoSpotFoundHeuristic;
  }
  return v;
}

VertexSet exceptional_vertices(const std::vector<DenseSpot>& spots, const VertexSet& e, const VertexSet& u,
                               const Rational& gamma, long long k) {
  const Rational cap = gamma * gamma * k;
  std::vector<VertexSet> good_spots;
  for (const auto& s : spots) {
    VertexSet vs = s.vertices();
    if (Rational(static_cast<std::int64_t>(intersection_size(u, vs))) <= cap) good_spots.push_back(std::move(vs));
  }
  std::vector<Vertex> bad;
  for (Vertex v : e) {
    bool ok = std::any_of(good_spots.begin(), good_spots.end(), [v](const VertexSet& s) { return s.contains(v); });
    if (!ok) bad.push_back(v);
  }
  return VertexSet::from(std::move(bad));
}

namespace {

long long family_size(long long n, long long max_size, long long limit) {
  long long total = 0;
  long long binom = 1;
  for (long long i = 0; i <= std::min(n, max_size); ++i) {
    total += binom;
    if (total > limit) return limit + 1;
    binom = binom * (n - i) / (i + 1);
    if (binom > limit) binom = limit + 1;
  }
  return total;
}

}  // namespace

AvoidingVerdict check_avoiding(const Graph& g, const std::vector<DenseSpot>& spots, const VertexSet& e,
                               const Rational& lambda, const Rational& eps, const Rational& gamma, long long k,
                               const AvoidingMode& mode) {
  if (k < 0) throw InputError("avoiding: k must be non-negative");
  if (lambda <= 0 || eps <= 0 || gamma <= 0) throw InputError("avoiding: parameters must be positive");
  VertexSet all;
  for (const auto& s : spots) {
    if (!s.u_side.within(g.size()) || !s.w_side.within(g.size())) throw InputError("avoiding: spot outside host");
    all = set_union(all, s.vertices());
  }
  if (!is_subset(e, all)) throw InputError("avoiding: E is not covered by the spots");
  const long long max_u = floor_of(lambda * k);
  const Rational allowed = eps * k;

  AvoidingVerdict verdict;
  auto test = [&](const VertexSet& u) {
    ++verdict.sets_examined;
    VertexSet bad = exceptional_vertices(spots, e, u, gamma, k);
    if (Rational(static_cast<std::int64_t>(bad.size())) > allowed) {
      verdict.avoiding = false;
      verdict.violating_u = u;
      verdict.bad = std::move(bad);
      return true;
    }
    return false;
  };

  if (mode.exact) {
    const long long n = static_cast<long long>(all.size());
    if (family_size(n, max_u, kExactAvoidingFamilyLimit) > kExactAvoidingFamilyLimit) {
      throw InputError("avoiding: exact mode would enumerate more than 2^20 sets");
    }
    verdict.exhaustive = true;
    // Enumerate subsets of `all` of size ≤ max_u by index combinations.
    std::vector<std::size_t> idx;
    std::vector<Vertex> chosen;
    const std::size_t limit = static_cast<std::size_t>(std::min(n, max_u));
    if (test(VertexSet{})) return verdict;
    for (std::size_t size = 1; size <= limit; ++size) {
      idx.resize(size);
      for (std::size_t i = 0; i < size; ++i) idx[i] = i;
      for (;;) {
        chosen.clear();
        for (std::size_t i : idx) chosen.push_back(all[i]);
        if (test(VertexSet::from(chosen))) return verdict;
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == all.size() - size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return verdict;
  }

  // Adversarial: greedily block spots, cheapest spots first.
  const long long budget_u = std::max<long long>(max_u, 0);
  const std::int64_t cap = floor_of(gamma * gamma * k);
  {
    std::vector<std::size_t> order(spots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return spots[a].vertices().size() < spots[b].vertices().size();
    });
    std::vector<Vertex> u;
    for (std::size_t i : order) {
      VertexSet vs = spots[i].vertices();
      VertexSet cur = VertexSet::from(u);
      long long need = cap + 1 - static_cast<long long>(intersection_size(cur, vs));
      if (need <= 0) continue;
      VertexSet fresh = set_difference(vs, cur);
      // Prefer vertices outside E so blocked spots hurt E the most.
      std::vector<Vertex> pick;
      for (Vertex v : fresh) {
        if (!e.contains(v)) pick.push_back(v);
      }
      for (Vertex v : fresh) {
        if (e.contains(v)) pick.push_back(v);
      }
      if (need > static_cast<long long>(fresh.size())) continue;
      if (static_cast<long long>(u.size()) + need > budget_u) continue;
      for (long long j = 0; j < need; ++j) u.push_back(pick[static_cast<std::size_t>(j)]);
      if (test(VertexSet::from(u))) return verdict;
    }
  }
  Rng rng(mode.seed);
  std::vector<Vertex> pool = all.ids();
  for (int trial = 0; trial < mode.trials; ++trial) {
    rng.shuffle(pool);
    std::size_t size = static_cast<std::size_t>(std::min<long long>(budget_u, static_cast<long long>(pool.size())));
    if (test(VertexSet::from(std::vector<Vertex>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size))))) {
      return verdict;
    }
  }
  return verdict;
}

}  // namespace lks
