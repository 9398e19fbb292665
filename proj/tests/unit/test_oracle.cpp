#include <doctest.h>

#include <map>
#include <set>

#include "lks/errors.hpp"
#include "lks/oracle.hpp"
#include "support/testkit.hpp"

using namespace lks;

TEST_CASE("containment oracle on small hosts") {
  RootedTree p3 = testkit::path_tree(3);
  Graph triangle = testkit::complete_graph(3);
  auto w = contains_tree(triangle, p3);
  REQUIRE(w);
  CHECK(testkit::is_tree_copy(triangle, p3, *w));

  Graph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  CHECK_FALSE(contains_tree(c5, testkit::star_tree(4)));
  CHECK_FALSE(contains_tree(Graph(2), testkit::path_tree(3)));

  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 300; ++rep) {
    Graph g = testkit::random_graph(2 + static_cast<int>(rng() % 6), 0.4, rng);
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 6), rng);
    auto found = contains_tree(g, t);
    CHECK(found.has_value() == testkit::brute_embeds(g, t));
    if (found) CHECK(testkit::is_tree_copy(g, t, *found));
  }
}

TEST_CASE("membership in the degree class") {
  Graph k8 = testkit::complete_graph(8);
  CHECK(lks_membership(k8, 5, rat(1, 10)));
  CHECK_FALSE(lks_membership(Graph(8), 1, rat(1, 10)));
  std::mt19937_64 rng(52);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 4 + static_cast<int>(rng() % 20);
    Graph g = testkit::random_graph(n, 0.4, rng);
    const long long k = 1 + static_cast<long long>(rng() % 6);
    const Rational alpha(static_cast<long long>(rng() % 4), 8);
    long long high = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (Rational(g.degree(v)) >= (1 + alpha) * Rational(k)) ++high;
    }
    CHECK(lks_membership(g, k, alpha) == (Rational(high) >= (rat(1, 2) + alpha) * Rational(n)));
  }
}

TEST_CASE("small-class check: clause by clause") {
  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = 4 + static_cast<int>(rng() % 12);
    Graph g = testkit::random_graph(n, 0.3, rng);
    const long long k = 1 + static_cast<long long>(rng() % 4);
    const Rational eta(static_cast<long long>(rng() % 3), 10);
    LksSmallReport r = lks_small_check(g, k, eta);
    CHECK(r.member == lks_membership(g, k, eta));
    CHECK(r.edges == g.edge_count());
    CHECK(r.edge_bound == k * n);
    CHECK(r.edge_bound_ok == (g.edge_count() <= k * n));
    const long long top = ceil_of((1 + 2 * eta) * Rational(k));
    bool high_ok = true;
    for (auto [a, b] : g.edges()) {
      if (g.degree(a) > top && g.degree(b) > top) high_ok = false;
    }
    CHECK(r.high_degree_ok == high_ok);
    const long long exact = ceil_of((1 + eta) * Rational(k));
    bool small_ok = true;
    for (Vertex v = 0; v < n; ++v) {
      if (Rational(g.degree(v)) >= (1 + eta) * Rational(k)) continue;
      for (Vertex w : g.neighbours(v)) small_ok = small_ok && g.degree(w) == exact;
    }
    CHECK(r.small_neighbours_ok == small_ok);
  }
  Graph cycle(9);
  for (int i = 0; i < 9; ++i) cycle.add_edge(i, (i + 1) % 9);
  CHECK(lks_small_check(cycle, 2, rat(0)).small_neighbours_ok);
  Graph kn = testkit::complete_graph(12);
  LksSmallReport big = lks_small_check(kn, 2, rat(0));
  CHECK_FALSE(big.edge_bound_ok);
  CHECK(big.edges == 66);
}

TEST_CASE("tree enumeration counts and canonical forms") {
  const std::vector<std::size_t> counts{1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int n = 1; n <= 10; ++n) {
    auto trees = enumerate_trees(n);
    CHECK(trees.size() == counts[static_cast<std::size_t>(n - 1)]);
    std::set<std::string> forms;
    for (const auto& t : trees) {
      CHECK(t.size() == n);
      forms.insert(tree_canonical_form(t));
    }
    CHECK(forms.size() == trees.size());
  }
  // Independent dedup by Prüfer decoding agrees up to 8 vertices.
  for (int n = 1; n <= 8; ++n) CHECK(testkit::unlabelled_trees(n).size() == enumerate_trees(n).size());
  CHECK_THROWS_AS(enumerate_trees(0), InputError);
  CHECK_THROWS_AS(enumerate_trees(11), InputError);

  std::mt19937_64 rng(54);
  for (int rep = 0; rep < 50; ++rep) {
    RootedTree t = testkit::random_tree(1 + static_cast<int>(rng() % 9), rng);
    RootedTree u = t.rerooted(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(t.size())));
    CHECK(tree_canonical_form(t) == tree_canonical_form(u));
  }
  CHECK(tree_canonical_form(testkit::path_tree(4)) != tree_canonical_form(testkit::star_tree(3)));
}

TEST_CASE("random labelled trees are uniform") {
  CHECK(gen_random_tree(1, 0).size() == 1);
  RootedTree two = gen_random_tree(2, 0);
  CHECK(two.size() == 2);
  CHECK(two.root() == 0);
  CHECK_THROWS_AS(gen_random_tree(0, 0), InputError);
  const int samples = 100000;
  std::map<std::set<std::pair<int, int>>, int> freq;
  for (int s = 0; s < samples; ++s) {
    RootedTree t = gen_random_tree(5, static_cast<std::uint64_t>(s));
    CHECK(t.root() == 0);
    std::set<std::pair<int, int>> key;
    for (auto [c, p] : testkit::tree_edges(t)) key.insert({std::min(c, p), std::max(c, p)});
    ++freq[key];
  }
  CHECK(freq.size() == 125);
  const double p = 1.0 / 125.0;
  const double sigma = std::sqrt(p * (1 - p) / samples);
  int outside = 0;
  for (auto& [k, c] : freq) {
    if (std::abs(static_cast<double>(c) / samples - p) > 3 * sigma) ++outside;
  }
  // At 3 sigma roughly 0.3% of 125 cells fall outside by chance; allow a couple.
  CHECK(outside <= 3);
}

TEST_CASE("degree-class generator") {
  Graph g0 = gen_lks_graph(10, 0, rat(0), 3);
  CHECK(lks_membership(g0, 0, rat(0)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen_lks_graph(40, 10, rat(1, 10), seed);
    CHECK(lks_membership(g, 10, rat(1, 10)));
  }
  CHECK(gen_lks_graph(40, 10, rat(1, 10), 7) == gen_lks_graph(40, 10, rat(1, 10), 7));
  CHECK_THROWS_AS(gen_lks_graph(10, 10, rat(1, 10), 0), InputError);
}

TEST_CASE("conjecture sweep at small orders") {
  ConjectureReport r3 = verify_conjecture_range(3);
  REQUIRE(r3.graphs_per_n.size() == 4);
  CHECK(r3.graphs_per_n[3] == 8);
  CHECK(r3.graphs_swept == 1 + 2 + 8);
  CHECK(r3.verified());
  ConjectureReport r5 = verify_conjecture_range(5);
  CHECK(r5.verified());
  long long expect = 0;
  for (int n = 1; n <= 5; ++n) expect += 1LL << (n * (n - 1) / 2);
  CHECK(r5.graphs_swept == expect);
  CHECK_THROWS_AS(verify_conjecture_range(8), InputError);

  // Independent recount of the hypothesis and containment at n <= 4.
  long long instances = 0;
  for (int n = 1; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << pairs); ++mask) {
      Graph g = testkit::graph_from_mask(n, mask);
      for (int k = 1; k <= n; ++k) {
        int qualified = 0;
        for (Vertex v = 0; v < n; ++v) qualified += g.degree(v) >= k - 1 ? 1 : 0;
        if (2 * qualified < n) continue;
        ++instances;
        for (const auto& t : testkit::unlabelled_trees(k)) CHECK(testkit::brute_embeds(g, t));
      }
    }
  }
  CHECK(verify_conjecture_range(4).instances_checked == instances);
}
