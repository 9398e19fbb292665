#include <doctest.h>

#include <cstdlib>
#include <set>

#include "lks/embed_kit.hpp"
#include "lks/errors.hpp"
#include "lks/oracle.hpp"
#include "support/testkit.hpp"

using namespace lks;

namespace {

const EmbedOptions kRelaxed{false};

/// C = 0..a-1, D = a..a+b-1, then `extra` isolated vertices.
Graph pair_host(int a, int b, double p, std::mt19937_64& rng, int extra = 0) {
  Graph g(a + b + extra);
  testkit::add_random_bipartite(g, testkit::id_range(0, a), testkit::id_range(a, a + b), p, rng);
  return g;
}

VertexSet even_class(const RootedTree& t) { return parity_classes(t).even; }
VertexSet odd_class(const RootedTree& t) { return parity_classes(t).odd; }

bool maps_into(const PartialEmbedding& e, const VertexSet& tree_vs, const VertexSet& host_vs) {
  for (Vertex v : tree_vs) {
    if (!host_vs.contains(e[v])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("greedy dense: complete bipartite hosts and the trivial tree") {
  for (int k = 1; k <= 7; ++k) {
    Graph g = testkit::complete_bipartite(k, k);
    VertexSet a = testkit::id_range(0, k), b = testkit::id_range(k, 2 * k);
    for (const auto& t : enumerate_trees(k)) {
      auto e = embed_greedy_dense(g, a, b, t, k);
      CHECK(testkit::sound(g, t, e));
    }
  }
  Graph one = testkit::complete_bipartite(1, 1);
  auto e = embed_greedy_dense(one, VertexSet{0}, VertexSet{1}, testkit::path_tree(1), 1);
  CHECK(e[0] == 0);
}

TEST_CASE("greedy dense: exhaustive over hosts on at most five vertices") {
  long long runs = 0;
  for (int n = 1; n <= 5; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      Graph g = testkit::graph_from_mask(n, mask);
      for (std::uint32_t amask = 1; amask < (1U << n); ++amask) {
        std::vector<Vertex> av, bv;
        for (Vertex v = 0; v < n; ++v) ((amask >> v) & 1U ? av : bv).push_back(v);
        const VertexSet a = VertexSet::from(av), b = VertexSet::from(bv);
        for (int k = 1; k <= n; ++k) {
          bool hyp = true;
          for (Vertex v : a) hyp = hyp && 2 * g.degree_into(v, b) >= k && g.degree(v) >= k;
          for (Vertex v : b) hyp = hyp && 2 * g.degree_into(v, a) >= k;
          for (const auto& t : enumerate_trees(k)) {
            if (!hyp) {
              CHECK_THROWS_AS(embed_greedy_dense(g, a, b, t, k), PreconditionError);
              break;
            }
            auto e = embed_greedy_dense(g, a, b, t, k);
            CHECK(testkit::sound(g, t, e));
            CHECK(contains_tree(g, t).has_value());
            ++runs;
          }
        }
      }
    }
  }
  CHECK(runs > 0);
}

TEST_CASE("greedy dense: precondition errors name the vertex") {
  // K_{3,3} without the edges 0-3 and 0-4.
  Graph g(6);
  for (Vertex x = 0; x < 3; ++x) {
    for (Vertex y = 3; y < 6; ++y) {
      if (x != 0 || y == 5) g.add_edge(x, y);
    }
  }
  try {
    embed_greedy_dense(g, testkit::id_range(0, 3), testkit::id_range(3, 6), testkit::path_tree(3), 3);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    REQUIRE(e.vertex().has_value());
    CHECK(*e.vertex() == 0);
  }
  CHECK_THROWS_AS(embed_greedy_dense(g, VertexSet{}, testkit::id_range(3, 6), testkit::path_tree(1), 1),
                  PreconditionError);
  CHECK_THROWS_AS(embed_greedy_dense(g, VertexSet{0}, VertexSet{0, 3}, testkit::path_tree(1), 1), PreconditionError);
  CHECK_THROWS_AS(embed_greedy_dense(g, VertexSet{0}, VertexSet{3}, testkit::path_tree(2), 3), PreconditionError);
}

TEST_CASE("regular pair: hypotheses, trivial trees and random pairs") {
  Graph k12 = testkit::complete_bipartite(12, 12);
  const VertexSet c = testkit::id_range(0, 12), d = testkit::id_range(12, 24);
  auto e = embed_in_regular_pair(k12, c, d, c, d, c, testkit::path_tree(1), rat(1, 12), rat(1, 3));
  CHECK(c.contains(e[0]));
  CHECK_THROWS_AS(embed_in_regular_pair(k12, c, d, c, d, c, testkit::path_tree(3), rat(1, 12), rat(1, 3)),
                  PreconditionError);
  CHECK_THROWS_AS(embed_in_regular_pair(k12, c, d, d, d, d, testkit::path_tree(1), rat(1, 12), rat(1, 3), kRelaxed),
                  PreconditionError);

  std::mt19937_64 rng(81);
  for (int rep = 0; rep < 100; ++rep) {
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 7), rng);
    Graph g = testkit::complete_bipartite(6, 6);
    const VertexSet cs = testkit::id_range(0, 6), ds = testkit::id_range(6, 12);
    const VertexSet xs = VertexSet{0, 2, 3, 4, 5};
    auto em = embed_in_regular_pair(g, cs, ds, cs, ds, xs, t, rat(1, 12), rat(1, 3), kRelaxed);
    CHECK(testkit::sound(g, t, em));
    CHECK(xs.contains(em[t.root()]));
    CHECK(maps_into(em, even_class(t), cs));
    CHECK(maps_into(em, odd_class(t), ds));
  }

  int ok = 0, failed = 0;
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = pair_host(12, 12, 0.8, rng);
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 8), rng);
    const VertexSet x = testkit::random_subset(12, 0.8, rng);
    VertexSet y;
    for (Vertex v : testkit::random_subset(12, 0.8, rng)) y = set_union(y, VertexSet{v + 12});
    const VertexSet x_star = set_intersection(x, testkit::id_range(0, 8));
    try {
      auto em = embed_in_regular_pair(g, c, d, x, y, x_star, t, rat(1, 12), rat(1, 4), kRelaxed);
      CHECK(testkit::sound(g, t, em));
      CHECK(x_star.contains(em[t.root()]));
      CHECK(maps_into(em, even_class(t), x));
      CHECK(maps_into(em, odd_class(t), y));
      ++ok;
    } catch (const EmbedFailure& f) {
      CHECK(f.evidence().stuck_tree_vertex >= 0);
      CHECK(f.evidence().stuck_tree_vertex < t.size());
      ++failed;
    }
  }
  CHECK(ok > 150);
}

TEST_CASE("regular pair: an empty pair yields evidence") {
  Graph g(8);
  const VertexSet c = testkit::id_range(0, 4), d = testkit::id_range(4, 8);
  try {
    embed_in_regular_pair(g, c, d, c, d, c, testkit::path_tree(2), rat(1, 12), rat(1, 3), kRelaxed);
    FAIL("expected an embedding failure");
  } catch (const EmbedFailure& f) {
    CHECK(f.evidence().stuck_tree_vertex == 0);
  }
}

TEST_CASE("fill pair: trivial cases") {
  Graph g = testkit::complete_bipartite(6, 6);
  const VertexSet c = testkit::id_range(0, 6), d = testkit::id_range(6, 12), cd = testkit::id_range(0, 12);
  std::vector<RootedTree> one{testkit::path_tree(2)};
  FillResult r = fill_pair(g, c, d, one, {}, cd, rat(1, 12), rat(1, 100), kRelaxed);
  REQUIRE(r.embeddings.size() == 1);
  CHECK(testkit::forest_sound(g, one, r.embeddings));
  CHECK(cd.contains(r.embeddings[0][0]));
  CHECK(r.plan.fill_case == 2);

  std::vector<RootedTree> dots(5, testkit::path_tree(1));
  const VertexSet x_star{1, 3, 5, 7, 9, 11};
  FillResult rd = fill_pair(g, c, d, dots, {}, x_star, rat(1, 12), rat(1, 100), kRelaxed);
  CHECK(testkit::forest_sound(g, dots, rd.embeddings));
  for (const auto& e : rd.embeddings) CHECK(x_star.contains(e[0]));

  CHECK(fill_pair(g, c, d, {}, {}, cd, rat(1, 12), rat(1, 3), kRelaxed).embeddings.empty());
  CHECK_THROWS_AS(fill_pair(g, c, d, one, {}, cd, rat(1, 12), rat(1, 3)), PreconditionError);
  CHECK_THROWS_AS(fill_pair(g, c, d, one, VertexSet{0}, cd, rat(1, 12), rat(1, 3), kRelaxed), PreconditionError);
}

TEST_CASE("fill pair: random instances at l = 12") {
  std::mt19937_64 rng(82);
  const VertexSet c = testkit::id_range(0, 12), d = testkit::id_range(12, 24), cd = testkit::id_range(0, 24);
  int ok = 0;
  std::set<int> cases;
  for (int rep = 0; rep < 300; ++rep) {
    Graph g = pair_host(12, 12, 0.85, rng);
    const int blocked = static_cast<int>(rng() % 3);
    VertexSet u;
    for (int i = 0; i < blocked; ++i) u = set_union(u, VertexSet{static_cast<Vertex>(i), static_cast<Vertex>(23 - i)});
    std::vector<Vertex> star_ids;
    for (Vertex v : set_difference(cd, u)) {
      if (rng() % 4 != 0 || v < 12) star_ids.push_back(v);
    }
    const VertexSet x_star = VertexSet::from(star_ids);
    std::vector<RootedTree> trees;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) trees.push_back(testkit::random_tree(1 + static_cast<int>(rng() % 3), rng));
    try {
      FillResult r = fill_pair(g, c, d, trees, u, x_star, rat(1, 12), rat(1, 16), kRelaxed);
      CHECK(testkit::forest_sound(g, trees, r.embeddings, u));
      std::vector<Vertex> used;
      for (std::size_t i = 0; i < trees.size(); ++i) {
        CHECK(x_star.contains(r.embeddings[i][trees[i].root()]));
        for (Vertex h : r.embeddings[i].map) used.push_back(h);
      }
      const VertexSet img = VertexSet::from(used);
      CHECK(is_subset(img, set_difference(cd, u)));
      CHECK(intersection_size(img, c) <= set_difference(c, u).size());
      CHECK(intersection_size(img, d) <= set_difference(d, u).size());
      std::vector<std::size_t> all = r.plan.i1;
      all.insert(all.end(), r.plan.i2.begin(), r.plan.i2.end());
      all.insert(all.end(), r.plan.rest.begin(), r.plan.rest.end());
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> expect(trees.size());
      std::iota(expect.begin(), expect.end(), std::size_t{0});
      CHECK(all == expect);
      cases.insert(r.plan.fill_case);
      ++ok;
    } catch (const EmbedFailure&) {
    }
  }
  CHECK(ok > 200);
  CHECK(cases.size() >= 2);
}

TEST_CASE("super-regular pair") {
  Graph k12 = testkit::complete_bipartite(12, 12);
  const VertexSet a = testkit::id_range(0, 12), b = testkit::id_range(12, 24);
  std::mt19937_64 rng(83);
  for (int rep = 0; rep < 30; ++rep) {
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 3), rng);
    const Vertex v0 = static_cast<Vertex>(rng() % 12);
    auto e = embed_superregular(k12, a, b, {}, {}, t, v0, rat(1, 20), rat(1));
    CHECK(testkit::sound(k12, t, e));
    CHECK(e[t.root()] == v0);
  }
  auto single = embed_superregular(k12, a, b, {}, {}, testkit::path_tree(1), 5, rat(1, 20), rat(1));
  CHECK(single.map == std::vector<Vertex>{5});
  CHECK_THROWS_AS(embed_superregular(k12, a, b, VertexSet{5}, {}, testkit::path_tree(1), 5, rat(1, 20), rat(1)),
                  PreconditionError);

  int ok = 0, certified = 0;
  for (int rep = 0; rep < 120; ++rep) {
    Graph g = pair_host(12, 12, rep % 3 == 0 ? 1.0 : 0.9, rng);
    auto verdict = check_regularity(g, a, b, rat(1, 4), RegularityMode::exhaustive(), rat(1, 2));
    const bool super = verdict.regular() && verdict.super_regular.value_or(false);
    certified += super ? 1 : 0;
    const VertexSet ua = set_intersection(testkit::random_subset(24, 0.2, rng), a);
    const VertexSet ub = set_intersection(testkit::random_subset(24, 0.1, rng), b);
    const VertexSet a_free = set_difference(a, ua);
    if (a_free.empty()) continue;
    const Vertex v0 = a_free.front();
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 8), rng);
    try {
      auto e = embed_superregular(g, a, b, ua, ub, t, v0, rat(1, 4), rat(1, 2), kRelaxed);
      CHECK(testkit::sound(g, t, e, set_union(ua, ub)));
      CHECK(e[t.root()] == v0);
      CHECK(maps_into(e, even_class(t), a));
      CHECK(maps_into(e, odd_class(t), b));
      ++ok;
    } catch (const EmbedFailure& f) {
      CHECK_FALSE(super);
      CHECK(f.evidence().stuck_tree_vertex >= 0);
    }
  }
  CHECK(ok > 100);
  CHECK(certified > 0);
}

TEST_CASE("balanced embedding") {
  // v0 = 10 is joined to every vertex of the pair (0..4, 5..9).
  Graph g = testkit::complete_bipartite(5, 5);
  Graph h(11);
  for (auto [x, y] : g.edges()) h.add_edge(x, y);
  for (Vertex v = 0; v < 10; ++v) h.add_edge(10, v);
  RegularizedMatching m{{MatchedPair{testkit::id_range(0, 5), testkit::id_range(5, 10), {}}}, rat(0), rat(1), 5};
  auto single = embed_balanced(h, 10, m, {0}, testkit::path_tree(1), rat(1, 4), 4);
  CHECK(single.map == std::vector<Vertex>{10});

  auto e = embed_balanced(h, 10, m, {0}, testkit::star_tree(4), rat(1, 4), 4, kRelaxed);
  CHECK(testkit::sound(h, testkit::star_tree(4), e));
  long long in_a = 0, in_b = 0;
  for (Vertex v = 1; v <= 4; ++v) (e[v] < 5 ? in_a : in_b) += 1;
  CHECK(std::llabs(in_a - in_b) <= 1);
  CHECK_THROWS_AS(embed_balanced(h, 10, m, {2}, testkit::star_tree(4), rat(1, 4), 4, kRelaxed), InputError);
  CHECK_THROWS_AS(embed_balanced(h, 10, m, {0}, testkit::path_tree(3), rat(1, 4), 4, kRelaxed), PreconditionError);

  std::mt19937_64 rng(84);
  int ok = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int np = 1 + static_cast<int>(rng() % 3);
    const int side = 6;
    const int n = 2 * side * np + 1;
    const Vertex v0 = n - 1;
    Graph host(n);
    RegularizedMatching mm;
    mm.eps = rat(1, 10);
    mm.d = rat(1, 2);
    mm.ell = side;
    for (int i = 0; i < np; ++i) {
      VertexSet pa = testkit::id_range(2 * side * i, 2 * side * i + side);
      VertexSet pb = testkit::id_range(2 * side * i + side, 2 * side * (i + 1));
      testkit::add_random_bipartite(host, pa, pb, 0.9, rng);
      mm.pairs.push_back({pa, pb, {}});
    }
    for (Vertex v = 0; v < v0; ++v) host.add_edge(v0, v);
    const long long k = 12;
    const Rational tau = rat(1, 4);  // components of order ≤ 3
    std::vector<int> sizes;
    int total = 1;
    while (true) {
      int s = 1 + static_cast<int>(rng() % 3);
      if (total + s > side * np) break;
      sizes.push_back(s);
      total += s;
      if (rng() % 4 == 0) break;
    }
    RootedTree t = testkit::bouquet(sizes, rng);
    std::vector<long long> f;
    for (int i = 0; i < np; ++i) f.push_back(static_cast<long long>(rng() % 7) - 3);
    try {
      auto e2 = embed_balanced(host, v0, mm, f, t, tau, k, kRelaxed);
      CHECK(testkit::sound(host, t, e2));
      CHECK(e2[t.root()] == v0);
      for (int i = 0; i < np; ++i) {
        long long ca = 0, cb = 0;
        for (Vertex h2 : e2.map) {
          if (mm.pairs[static_cast<std::size_t>(i)].a.contains(h2)) ++ca;
          if (mm.pairs[static_cast<std::size_t>(i)].b.contains(h2)) ++cb;
        }
        CHECK(std::llabs(ca + f[static_cast<std::size_t>(i)] - cb) <= 3);
      }
      ++ok;
    } catch (const EmbedFailure&) {
    }
  }
  CHECK(ok > 150);
}

TEST_CASE("one-sided embedding") {
  Graph h(11);
  for (Vertex x = 0; x < 5; ++x) {
    for (Vertex y = 5; y < 10; ++y) h.add_edge(x, y);
  }
  for (Vertex v = 0; v < 10; ++v) h.add_edge(10, v);
  const VertexSet pa = testkit::id_range(0, 5), pb = testkit::id_range(5, 10);
  RegularizedMatching m{{MatchedPair{pa, pb, {}}}, rat(0), rat(1), 5};
  auto single = embed_oneside(h, 10, m, {pb}, {}, testkit::path_tree(1), rat(1, 4), 4, kRelaxed);
  CHECK(single.map == std::vector<Vertex>{10});

  const VertexSet u{1};
  RootedTree star = testkit::star_tree(3);
  auto e = embed_oneside(h, 10, m, {pb}, u, star, rat(1, 4), 4, kRelaxed);
  CHECK(testkit::sound(h, star, e, u));
  for (Vertex v = 1; v <= 3; ++v) CHECK(set_difference(pa, u).contains(e[v]));
  CHECK_THROWS_AS(embed_oneside(h, 10, m, {}, u, star, rat(1, 4), 4, kRelaxed), PreconditionError);

  std::mt19937_64 rng(85);
  int ok = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int np = 1 + static_cast<int>(rng() % 3), side = 6, n = 2 * side * np + 1;
    const Vertex v0 = n - 1;
    Graph host(n);
    RegularizedMatching mm;
    mm.eps = rat(1, 10);
    mm.d = rat(1, 2);
    mm.ell = side;
    std::vector<VertexSet> cover;
    for (int i = 0; i < np; ++i) {
      VertexSet a = testkit::id_range(2 * side * i, 2 * side * i + side);
      VertexSet b = testkit::id_range(2 * side * i + side, 2 * side * (i + 1));
      testkit::add_random_bipartite(host, a, b, 0.9, rng);
      mm.pairs.push_back({a, b, {}});
      cover.push_back(rng() % 2 ? a : b);
    }
    testkit::add_random_bipartite(host, VertexSet{v0}, testkit::id_range(0, v0), 0.8, rng);
    const VertexSet uu = set_intersection(testkit::random_subset(n, 0.1, rng), testkit::id_range(0, v0));
    std::vector<int> sizes;
    for (int c = static_cast<int>(rng() % 4); c >= 0; --c) sizes.push_back(1 + static_cast<int>(rng() % 3));
    RootedTree t = testkit::bouquet(sizes, rng);
    VertexSet covered;
    for (const auto& s : cover) covered = set_union(covered, s);
    try {
      auto e2 = embed_oneside(host, v0, mm, cover, uu, t, rat(1, 4), 12, kRelaxed);
      CHECK(testkit::sound(host, t, e2, uu));
      for (Vertex c : t.children(t.root())) CHECK_FALSE(covered.contains(e2[c]));
      for (Vertex v = 0; v < t.size(); ++v) {
        if (v != t.root()) CHECK(mm.vertices().contains(e2[v]));
      }
      ++ok;
    } catch (const EmbedFailure&) {
    }
  }
  CHECK(ok > 150);
}

TEST_CASE("avoiding forest") {
  // Two disjoint K_{4,4} spots on 0..7 and 8..15.
  Graph h(16);
  for (int base : {0, 8}) {
    for (Vertex x = base; x < base + 4; ++x) {
      for (Vertex y = base + 4; y < base + 8; ++y) h.add_edge(x, y);
    }
  }
  const long long k = 9;
  const Rational gamma = rat(1, 3), eps = rat(1, 10);
  std::vector<DenseSpot> spots{complete_spot(h, testkit::id_range(0, 4), testkit::id_range(4, 8), 3, gamma),
                               complete_spot(h, testkit::id_range(8, 12), testkit::id_range(12, 16), 3, gamma)};
  const VertexSet e_set = testkit::id_range(0, 16);

  std::vector<RootedTree> dot{testkit::path_tree(1)};
  auto r = embed_avoiding_forest(h, spots, e_set, dot, {}, e_set, rat(1, 9), eps, gamma, k);
  REQUIRE(r.size() == 1);
  CHECK(e_set.contains(r[0][0]));

  AvoidingVerdict v = check_avoiding(h, spots, e_set, rat(1, 9), eps, gamma, k, AvoidingMode::exhaustive());
  CHECK(v.avoiding);
  std::mt19937_64 rng(86);
  int ok = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const VertexSet u{static_cast<Vertex>(rng() % 16)};
    std::vector<RootedTree> trees;
    for (int c = 1 + static_cast<int>(rng() % 2); c > 0; --c) trees.push_back(testkit::random_tree(1 + static_cast<int>(rng() % 3), rng));
    const VertexSet u_star = set_difference(testkit::id_range(0, 8), u);
    try {
      auto out = embed_avoiding_forest(h, spots, e_set, trees, u, u_star, rat(1, 9), eps, gamma, k, kRelaxed);
      CHECK(testkit::forest_sound(h, trees, out, u));
      for (std::size_t i = 0; i < trees.size(); ++i) {
        CHECK(u_star.contains(out[i][trees[i].root()]));
        const bool low = out[i][trees[i].root()] < 8;
        for (Vertex x : out[i].map) CHECK((x < 8) == low);
      }
      ++ok;
    } catch (const EmbedFailure&) {
    }
  }
  CHECK(ok > 50);
  try {
    embed_avoiding_forest(h, spots, e_set, dot, VertexSet{0, 1}, testkit::id_range(0, 8), rat(1), eps, gamma, k);
    FAIL("expected an avoidance violation");
  } catch (const AvoidancePropertyViolation& err) {
    CHECK(err.bad_vertices().size() == 8);
  }
  CHECK_THROWS_AS(embed_avoiding_forest(h, spots, e_set, dot, {}, VertexSet{20}, rat(1, 9), eps, gamma, k),
                  PreconditionError);
}

TEST_CASE("avoiding forest under the full hypotheses") {
  // K_{6,6} spots on 0..11 and 12..23; k = 15 gives γk = 5, γ²k = 5/3, εk = 3/2.
  Graph h(24);
  for (int base : {0, 12}) {
    for (Vertex x = base; x < base + 6; ++x) {
      for (Vertex y = base + 6; y < base + 12; ++y) h.add_edge(x, y);
    }
  }
  const long long k = 15;
  const Rational gamma = rat(1, 3), eps = rat(1, 10), lambda = rat(1, 15);
  std::vector<DenseSpot> spots{complete_spot(h, testkit::id_range(0, 6), testkit::id_range(6, 12), 5, gamma),
                               complete_spot(h, testkit::id_range(12, 18), testkit::id_range(18, 24), 5, gamma)};
  const VertexSet e_set = testkit::id_range(0, 24);
  REQUIRE(check_avoiding(h, spots, e_set, lambda, eps, gamma, k, AvoidingMode::exhaustive()).avoiding);
  const std::vector<std::vector<RootedTree>> families{
      {testkit::path_tree(2)}, {testkit::path_tree(1), testkit::path_tree(1)}, {testkit::path_tree(2, 1)}};
  for (Vertex blocked = 0; blocked < 24; ++blocked) {
    const VertexSet u{blocked};
    const VertexSet u_star = set_difference(e_set, u);
    for (const auto& trees : families) {
      auto out = embed_avoiding_forest(h, spots, e_set, trees, u, u_star, lambda, eps, gamma, k);
      CHECK(testkit::forest_sound(h, trees, out, u));
    }
  }
}

TEST_CASE("nowhere-dense forest") {
  Graph k66 = testkit::complete_bipartite(6, 6);
  const VertexSet v1 = testkit::id_range(0, 6), v2 = testkit::id_range(6, 12);
  const Rational q = rat(1), gamma = rat(1, 512), zeta = rat(1, 2);
  CHECK(embed_nowheredense_forest(k66, {}, v1, v2, {}, v1, q, gamma, zeta, 12).empty());
  std::vector<RootedTree> dot{testkit::path_tree(1)};
  auto r = embed_nowheredense_forest(k66, dot, v1, v2, {}, v1, q, gamma, zeta, 12);
  REQUIRE(r.size() == 1);
  CHECK(v1.contains(r[0][0]));

  // Sparse hosts: unions of three perfect matchings between V1 and V2, certified exactly.
  std::mt19937_64 rng(87);
  int ok = 0, certified = 0;
  for (int rep = 0; rep < 150; ++rep) {
    const int side = 4;
    Graph h(2 * side);
    for (int round = 0; round < 3; ++round) {
      std::vector<Vertex> perm(static_cast<std::size_t>(side));
      std::iota(perm.begin(), perm.end(), side);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (Vertex x = 0; x < side; ++x) {
        if (!h.has_edge(x, perm[static_cast<std::size_t>(x)])) h.add_edge(x, perm[static_cast<std::size_t>(x)]);
      }
    }
    const long long k = 6;
    const Rational g2 = rat(1, 2);
    auto verdict = check_nowhere_dense(h, floor_of(g2 * Rational(k)), g2);
    if (verdict.status != NowhereDenseStatus::NowhereDenseExact) continue;
    ++certified;
    const VertexSet a = testkit::id_range(0, side), b = testkit::id_range(side, 2 * side);
    const VertexSet u = rng() % 2 ? VertexSet{static_cast<Vertex>(side + rng() % side)} : VertexSet{};
    std::vector<RootedTree> trees{testkit::random_tree(1 + static_cast<int>(rng() % 3), rng)};
    try {
      auto out = embed_nowheredense_forest(h, trees, a, b, u, a, q, g2, rat(1, 2), k, kRelaxed);
      const VertexSet shadow_set = shadow(h, u, rat(1, 2) * Rational(k) / 2);
      CHECK(testkit::forest_sound(h, trees, out, set_union(u, shadow_set)));
      CHECK(maps_into(out[0], even_class(trees[0]), a));
      CHECK(maps_into(out[0], odd_class(trees[0]), b));
      ++ok;
    } catch (const EmbedFailure&) {
    }
  }
  CHECK(certified > 0);
  CHECK(ok > 0);

  // A U whose shadow swamps the bound.
  CHECK_THROWS_AS(embed_nowheredense_forest(k66, dot, v1, v2, v2, v1, q, gamma, zeta, 12, kRelaxed),
                  NowhereDensePropertyViolation);
}

TEST_CASE("reservation: trivial cases") {
  // Left side 0..11 (X* = 0..3, X1 = 4..11), right side X2 = 12..23, complete between the sides.
  Graph h(24);
  for (Vertex x = 0; x < 12; ++x) {
    for (Vertex y = 12; y < 24; ++y) h.add_edge(x, y);
  }
  const VertexSet xs = testkit::id_range(0, 4), x1 = testkit::id_range(4, 12), x2 = testkit::id_range(12, 24);
  std::vector<RootedTree> dot{testkit::path_tree(1)};
  ReservationResult r = embed_shrubs_with_reservation(h, xs, x1, x2, {}, dot, 4, 0);
  REQUIRE(r.embeddings.size() == 1);
  CHECK(r.attempts == 1);
  CHECK(r.reserved.size() == 1);
  const Vertex root = r.embeddings[0][0];
  CHECK((root == 0 || root == 1));
  CHECK(r.reserved == VertexSet{root == 0 ? 1 : 0});

  std::vector<RootedTree> path{testkit::path_tree(3)};
  ReservationResult rp = embed_shrubs_with_reservation(h, xs, x1, x2, {}, path, 4, 3);
  CHECK(testkit::forest_sound(h, path, rp.embeddings));
  CHECK(rp.reserved.size() == 3);
  CHECK(disjoint(rp.reserved, rp.embeddings[0].image()));
  CHECK_THROWS_AS(embed_shrubs_with_reservation(h, VertexSet{0}, x1, x2, {}, dot, 4, 0), PreconditionError);
}

TEST_CASE("reservation: random runs keep the tracked-set inequality") {
  std::mt19937_64 rng(88);
  int retried = 0;
  const int runs = 300;
  for (int rep = 0; rep < runs; ++rep) {
    const int left = 40, right = 40;
    Graph h(left + right);
    testkit::add_random_bipartite(h, testkit::id_range(0, left), testkit::id_range(left, left + right), 0.9, rng);
    std::vector<RootedTree> trees;
    long long total = 0;
    for (int c = 1 + static_cast<int>(rng() % 3); c > 0; --c) {
      trees.push_back(testkit::random_tree(1 + static_cast<int>(rng() % 4), rng));
      total += trees.back().size();
    }
    const VertexSet xs = testkit::id_range(0, 8), x1 = testkit::id_range(8, left),
                    x2 = testkit::id_range(left, left + right);
    bool hyp = true;
    for (Vertex v : testkit::id_range(0, left)) hyp = hyp && h.degree_into(v, x2) >= 2 * total;
    for (Vertex v : x2) hyp = hyp && h.degree_into(v, x1) >= 2 * total;
    if (!hyp) continue;
    const long long k = 16;
    std::vector<VertexSet> p;
    for (int j = 0; j < 4; ++j) {
      std::vector<Vertex> ids;
      for (Vertex v : testkit::random_subset(left + right, 0.2, rng)) {
        if (static_cast<long long>(ids.size()) < k) ids.push_back(v);
      }
      p.push_back(VertexSet::from(ids));
    }
    ReservationResult r = embed_shrubs_with_reservation(h, xs, x1, x2, p, trees, k, rng());
    CHECK(testkit::forest_sound(h, trees, r.embeddings));
    VertexSet images;
    for (const auto& e : r.embeddings) images = set_union(images, e.image());
    CHECK(disjoint(images, r.reserved));
    CHECK(static_cast<long long>(r.reserved.size()) == total);
    CHECK(r.slack == 8);
    for (std::size_t j = 0; j < p.size(); ++j) {
      const long long excess = static_cast<long long>(intersection_size(p[j], images)) -
                               static_cast<long long>(intersection_size(p[j], r.reserved));
      CHECK(excess == r.excess[j]);
      CHECK(excess <= r.slack);
    }
    retried += r.attempts > 1 ? 1 : 0;
  }
  CHECK(retried * 100 < runs);
}

TEST_CASE("reservation: exhausted retries report the tallies") {
  // Leaf candidates come in pairs (22, 23), (24, 25), ... and only the even one
  // is tracked, so the excess is 2X - 5 with X ~ Bin(5, 1/2); slack ⌈5^{3/4}⌉ = 4.
  Graph h(42);
  const VertexSet xs{0, 1}, x1 = testkit::id_range(2, 22), x2 = testkit::id_range(22, 42);
  std::mt19937_64 rng(90);
  testkit::add_random_bipartite(h, set_union(xs, x1), x2, 1.0, rng);
  std::vector<RootedTree> star{testkit::star_tree(5)};
  const std::vector<VertexSet> p{VertexSet{22, 24, 26, 28, 30}};
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    try {
      ReservationResult r = embed_shrubs_with_reservation(h, xs, x1, x2, p, star, 5, seed, 0);
      CHECK(r.excess[0] <= 4);
    } catch (const StochasticFailure& f) {
      REQUIRE(f.excess().size() == 1);
      CHECK(f.excess()[0] == 5);
      ++failures;
    }
  }
  CHECK(failures > 0);
  CHECK(failures < 40);
}

TEST_CASE("expander shrub") {
  Graph k66 = testkit::complete_bipartite(6, 6);
  const VertexSet v2 = testkit::id_range(0, 6), v3 = testkit::id_range(6, 12);
  ReservationResult r = embed_shrub_expander(k66, v2, v3, {}, v2, {}, testkit::path_tree(1), rat(1, 2), rat(1, 100),
                                             12, 0, kDefaultRetries, ExpanderTrust::Trusted, kRelaxed);
  REQUIRE(r.embeddings.size() == 1);
  CHECK(v2.contains(r.embeddings[0][0]));
  ReservationResult rp = embed_shrub_expander(k66, v2, v3, {}, v2, {}, testkit::path_tree(2), rat(1, 2),
                                              rat(1, 100), 12, 0, kDefaultRetries, ExpanderTrust::Trusted, kRelaxed);
  CHECK(testkit::sound(k66, testkit::path_tree(2), rp.embeddings[0]));
  CHECK_THROWS_AS(embed_shrub_expander(k66, v2, v3, {}, v2, {}, testkit::path_tree(1), rat(1, 2), rat(1, 100), 12, 0,
                                       kDefaultRetries, ExpanderTrust::Trusted),
                  PreconditionError);
  CHECK_THROWS_AS(embed_shrub_expander(k66, v2, v3, {}, v2, {}, testkit::path_tree(1), rat(1, 2), rat(1, 3), 6, 0,
                                       kDefaultRetries, ExpanderTrust::Check, kRelaxed),
                  PreconditionError);
  CHECK_THROWS_AS(embed_shrub_expander(k66, v2, v3, v3, v2, {}, testkit::path_tree(1), rat(1, 2), rat(1, 100), 12, 0,
                                       kDefaultRetries, ExpanderTrust::Trusted, kRelaxed),
                  NowhereDensePropertyViolation);

  std::mt19937_64 rng(89);
  int ok = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int side = 30;
    Graph h(2 * side);
    const VertexSet a = testkit::id_range(0, side), b = testkit::id_range(side, 2 * side);
    testkit::add_random_bipartite(h, a, b, 0.5, rng);
    const VertexSet u = set_intersection(testkit::random_subset(2 * side, 0.03, rng), a);
    const VertexSet u_star = set_difference(testkit::id_range(0, 10), u);
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 4), rng);
    std::vector<VertexSet> p{testkit::random_subset(2 * side, 0.2, rng)};
    try {
      ReservationResult res = embed_shrub_expander(h, a, b, u, u_star, p, t, rat(1, 2), rat(1, 100), 40, rng(),
                                                   kDefaultRetries, ExpanderTrust::Trusted, kRelaxed);
      const VertexSet blocked = set_union(u, shadow(h, u, rat(1, 2) * 40 / 4));
      CHECK(testkit::sound(h, t, res.embeddings[0], blocked));
      CHECK(u_star.contains(res.embeddings[0][t.root()]));
      CHECK(disjoint(res.reserved, set_union(u, res.embeddings[0].image())));
      CHECK(is_subset(res.reserved, set_union(a, b)));
      CHECK(res.excess[0] <= res.slack);
      ++ok;
    } catch (const PreconditionError&) {
    }
  }
  CHECK(ok > 50);
}
