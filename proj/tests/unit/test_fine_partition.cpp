#include <doctest.h>

#include "lks/errors.hpp"
#include "lks/fine_partition.hpp"
#include "support/testkit.hpp"

using namespace lks;
using testkit::star_tree;

namespace {

bool mentions(const ClauseResult& c, const std::string& text) {
  for (const auto& f : c.failures) {
    if (f.find(text) != std::string::npos) return true;
  }
  return false;
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(static_cast<std::size_t>(n)) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[static_cast<std::size_t>(x)] == x ? x : up[static_cast<std::size_t>(x)] = find(up[static_cast<std::size_t>(x)]); }
  void join(int a, int b) { up[static_cast<std::size_t>(find(a))] = find(b); }
};

/// Every prefix of the skeleton must induce a connected subgraph of t.
bool prefixes_connected(const RootedTree& t, const std::vector<SkeletonItem>& items) {
  std::vector<char> in(static_cast<std::size_t>(t.size()), 0);
  std::size_t count = 0;
  for (const auto& item : items) {
    for (Vertex v : item.vertices) {
      in[static_cast<std::size_t>(v)] = 1;
      ++count;
    }
    UnionFind uf(t.size());
    for (auto [c, p] : testkit::tree_edges(t)) {
      if (in[static_cast<std::size_t>(c)] && in[static_cast<std::size_t>(p)]) uf.join(c, p);
    }
    int root = -1;
    for (Vertex v = 0; v < t.size(); ++v) {
      if (!in[static_cast<std::size_t>(v)]) continue;
      if (root < 0) root = uf.find(v);
      if (uf.find(v) != root) return false;
    }
  }
  return count == static_cast<std::size_t>(t.size());
}

/// Path 0-1-...-7 rooted at 0 with W_A = {0, 6}: one internal shrub {1..5} and one end shrub {7}.
std::pair<RootedTree, FinePartition> bare_path_instance() {
  RootedTree t = testkit::path_tree(8);
  FinePartition p;
  p.ell = 5;
  p.w_a = VertexSet{0, 6};
  p.shrubs.push_back({VertexSet{1, 2, 3, 4, 5}, ShrubClass::A, ShrubKind::Internal, 0, 6, 1});
  p.shrubs.push_back({VertexSet{7}, ShrubClass::A, ShrubKind::End, 6, std::nullopt, 7});
  return {t, p};
}

/// As above, but the shrub root 1 also carries leaves 8 and 9.
std::pair<RootedTree, FinePartition> branching_instance() {
  RootedTree t = RootedTree::from_edges(10, 0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 8}, {1, 9}});
  FinePartition p;
  p.ell = 7;
  p.w_a = VertexSet{0, 6};
  p.shrubs.push_back({VertexSet{1, 2, 3, 4, 5, 8, 9}, ShrubClass::A, ShrubKind::Internal, 0, 6, 1});
  p.shrubs.push_back({VertexSet{7}, ShrubClass::A, ShrubKind::End, 6, std::nullopt, 7});
  return {t, p};
}

void check_stage_bounds(const RootedTree& t, int ell, const PartitionStages& s) {
  const long long n = t.size();
  CHECK(static_cast<long long>(s.w1.size()) * ell <= n + ell);
  CHECK(s.w2.size() <= 2 * s.w1.size());
  CHECK(s.w3.size() <= 4 * s.w1.size());
  CHECK(s.w4.size() <= 8 * s.w1.size());
  CHECK(static_cast<long long>(s.w5.size()) * ell <= 64 * n + ell);
  CHECK(s.x.size() <= 2 * s.w5.size());
  CHECK(is_subset(s.w1, s.w2));
  CHECK(is_subset(s.w2, s.w3));
  CHECK(is_subset(s.w3, s.w4));
  CHECK(is_subset(s.w4, s.w5));
}

}  // namespace

TEST_CASE("fine partition rejects ell = 0") {
  CHECK_THROWS_AS(fine_partition(star_tree(3), 0), InputError);
}

TEST_CASE("star: the centre is the only cut vertex") {
  for (int k = 2; k <= 12; ++k) {
    RootedTree t = star_tree(k - 1);
    for (int ell = 1; ell < k; ++ell) {
      FinePartition p = fine_partition(t, ell);
      CHECK(p.w_a == VertexSet{0});
      CHECK(p.w_b.empty());
      REQUIRE(p.shrubs.size() == static_cast<std::size_t>(k - 1));
      for (std::size_t i = 0; i < p.shrubs.size(); ++i) {
        CHECK(p.shrubs[i].vertices == VertexSet{static_cast<Vertex>(i + 1)});
        CHECK(p.shrubs[i].cls == ShrubClass::A);
        CHECK(p.shrubs[i].kind == ShrubKind::End);
        CHECK(p.shrubs[i].seed == 0);
      }
      CHECK(validate_fine_partition(t, ell, p).all_passed());
    }
  }
}

TEST_CASE("trees no larger than ell get a single cut vertex") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 20);
    RootedTree t = testkit::random_tree(n, rng);
    StagedPartition sp = fine_partition_staged(t, n + static_cast<int>(rng() % 3));
    CHECK(sp.stages.w1 == VertexSet{t.root()});
    CHECK(sp.partition.cut_vertices().size() == 1);
    CHECK_FALSE(sp.partition.shrubs.empty());
    CHECK(validate_fine_partition(t, sp.partition.ell, sp.partition).all_passed());
  }
}

TEST_CASE("random trees: every clause, the size bound and the stage bounds") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 400);
    RootedTree t = rep % 3 == 0 ? testkit::random_caterpillar(n, rng, 1 + static_cast<int>(rng() % 4))
                                : testkit::random_tree(n, rng);
    for (int ell : {1, 2, 5, 20, std::max(1, (n + 9) / 10)}) {
      StagedPartition sp = fine_partition_staged(t, ell);
      const FinePartition& p = sp.partition;
      ClauseReport r = validate_fine_partition(t, ell, p);
      CHECK_MESSAGE(r.all_passed(), "n=", n, " ell=", ell, " failures=", r.failure_count());
      CHECK(static_cast<long long>(std::max(p.w_a.size(), p.w_b.size())) * ell <= 336LL * n);
      check_stage_bounds(t, ell, sp.stages);
      CHECK(fine_partition(t, ell).shrubs == p.shrubs);

      std::size_t internal = 0;
      for (const auto& s : p.shrubs) {
        if (s.kind != ShrubKind::Internal) continue;
        ++internal;
        REQUIRE(s.second_anchor);
        // Rooted at its top vertex, the shrub's neighbour of the second anchor is a fruit.
        const Vertex r2 = t.parent(*s.second_anchor);
        REQUIRE(s.vertices.contains(r2));
        Subtree local = induced_subtree(t, s.vertices, s.root);
        CHECK(fruits(local.tree).contains(local.local_of(r2)));
      }
      CHECK(internal <= p.w_a.size());
    }
  }
}

TEST_CASE("validator names a W_A vertex moved into a shrub") {
  RootedTree t = star_tree(4);
  FinePartition p = fine_partition(t, 2);
  REQUIRE(validate_fine_partition(t, 2, p).all_passed());
  p.w_a = VertexSet{};
  p.shrubs[0].vertices = VertexSet{0, 1};
  ClauseReport r = validate_fine_partition(t, 2, p);
  CHECK_FALSE(r.clause("a").passed);
  CHECK(mentions(r.clause("a"), "vertex 0"));
}

TEST_CASE("validator flags a shrub larger than ell") {
  auto [t, p] = bare_path_instance();
  REQUIRE(validate_fine_partition(t, 5, p).all_passed());
  ClauseReport r = validate_fine_partition(t, 4, FinePartition{p.w_a, p.w_b, p.shrubs, 4});
  CHECK_FALSE(r.clause("e").passed);
  CHECK(r.clause("a").passed);
}

TEST_CASE("validator flags a B-class internal shrub and odd distances") {
  auto [t, p] = bare_path_instance();
  FinePartition swapped = p;
  swapped.w_b = swapped.w_a;
  swapped.w_a = VertexSet{};
  for (auto& s : swapped.shrubs) s.cls = ShrubClass::B;
  ClauseReport r = validate_fine_partition(t, 5, swapped);
  CHECK_FALSE(r.clause("k").passed);
  CHECK_FALSE(r.clause("l").passed);

  RootedTree path = testkit::path_tree(3);
  FinePartition odd;
  odd.ell = 1;
  odd.w_a = VertexSet{0, 1};
  odd.shrubs.push_back({VertexSet{2}, ShrubClass::A, ShrubKind::End, 1, std::nullopt, 2});
  CHECK_FALSE(validate_fine_partition(path, 1, odd).clause("d").passed);
}

TEST_CASE("ordered skeleton") {
  RootedTree star = star_tree(4);
  FinePartition p = fine_partition(star, 2);
  auto items = ordered_skeleton(star, p);
  REQUIRE(items.size() == 5);
  CHECK(items[0].kind == SkeletonKind::Hub);
  CHECK(items[0].vertices == VertexSet{0});
  for (std::size_t i = 1; i < items.size(); ++i) {
    CHECK(items[i].kind == SkeletonKind::Shrub);
    CHECK(items[i].vertices == VertexSet{static_cast<Vertex>(i)});
  }

  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 80; ++rep) {
    const int n = 1 + static_cast<int>(rng() % 300);
    RootedTree t = testkit::random_tree(n, rng);
    const int ell = 1 + static_cast<int>(rng() % 30);
    FinePartition fp = fine_partition(t, ell);
    auto sk = ordered_skeleton(t, fp);
    REQUIRE_FALSE(sk.empty());
    CHECK(sk[0].kind == SkeletonKind::Hub);
    CHECK(sk[0].vertices.contains(t.root()));
    CHECK(prefixes_connected(t, sk));
    auto hs = hubs(t, fp);
    for (const auto& item : sk) {
      if (item.kind == SkeletonKind::Hub) {
        CHECK(item.vertices == hs.at(item.index));
      } else {
        CHECK(item.vertices == fp.shrubs.at(item.index).vertices);
      }
    }
  }

  FinePartition broken = p;
  broken.w_a = VertexSet{};
  CHECK_THROWS_AS(ordered_skeleton(star, broken), InputError);
}

TEST_CASE("subshrubs") {
  {
    auto [t, p] = bare_path_instance();
    SubshrubSplit s = classify_subshrubs(t, p, p.shrubs[0]);
    CHECK(s.principal == VertexSet{2, 3, 4, 5});
    CHECK(s.peripherals.empty());
    CHECK_THROWS_AS(classify_subshrubs(t, p, p.shrubs[1]), InputError);
  }
  {
    auto [t, p] = branching_instance();
    REQUIRE(validate_fine_partition(t, 7, p).all_passed());
    SubshrubSplit s = classify_subshrubs(t, p, p.shrubs[0]);
    CHECK(s.principal == VertexSet{2, 3, 4, 5});
    REQUIRE(s.peripherals.size() == 2);
    CHECK(s.peripherals[0] == VertexSet{8});
    CHECK(s.peripherals[1] == VertexSet{9});
  }
  std::mt19937_64 rng(44);
  int internal_seen = 0;
  for (int rep = 0; rep < 120; ++rep) {
    const int n = 20 + static_cast<int>(rng() % 300);
    RootedTree t = testkit::random_caterpillar(n, rng, 2 + static_cast<int>(rng() % 3));
    FinePartition p = fine_partition(t, 3 + static_cast<int>(rng() % 12));
    for (const auto& sh : p.shrubs) {
      if (sh.kind != ShrubKind::Internal) continue;
      ++internal_seen;
      SubshrubSplit s = classify_subshrubs(t, p, sh);
      std::vector<Vertex> all = s.principal.ids();
      for (const auto& q : s.peripherals) all.insert(all.end(), q.begin(), q.end());
      all.push_back(sh.root);
      CHECK(all.size() == sh.vertices.size());
      CHECK(VertexSet::from(all) == sh.vertices);
      int touching = 0;
      auto touches_wa = [&](const VertexSet& part) {
        for (Vertex v : part) {
          for (Vertex u : t.neighbours(v)) {
            if (p.w_a.contains(u)) return true;
          }
        }
        return false;
      };
      touching += touches_wa(s.principal) ? 1 : 0;
      for (const auto& q : s.peripherals) touching += touches_wa(q) ? 1 : 0;
      CHECK(touching == 1);
      CHECK(touches_wa(s.principal));
    }
  }
  CHECK(internal_seen > 0);
}
