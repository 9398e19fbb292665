#include "lks/fine_partition.hpp"

#include <algorithm>
#include <map>

#include "lks/errors.hpp"

namespace lks {

std::string to_string(ShrubClass c) { return c == ShrubClass::A ? "A" : "B"; }
std::string to_string(ShrubKind k) { return k == ShrubKind::End ? "end" : "internal"; }

namespace {

using Flags = std::vector<char>;

struct Component {
  Vertex top = -1;
  std::vector<Vertex> vertices;  // BFS order
  Vertex seed = -1;              // -1 if the component contains the root
  std::vector<Vertex> below;     // cut vertices that are children of component vertices

  std::size_t anchor_count() const { return below.size() + (seed >= 0 ? 1 : 0); }
  bool is_end() const { return below.empty(); }
};

VertexSet set_of(const Flags& f) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (f[v]) out.push_back(static_cast<Vertex>(v));
  }
  return VertexSet::from(std::move(out));
}

// Components of T − W, ordered by their top vertex in BFS order.
std::vector<Component> components_outside(const RootedTree& t, const Flags& in_w) {
  std::vector<int> comp(static_cast<std::size_t>(t.size()), -1);
  std::vector<Component> out;
  for (Vertex v : t.bfs_order()) {
    if (in_w[static_cast<std::size_t>(v)]) continue;
    Vertex p = t.parent(v);
    if (p >= 0 && !in_w[static_cast<std::size_t>(p)]) {
      comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(p)];
    } else {
      comp[static_cast<std::size_t>(v)] = static_cast<int>(out.size());
      Component c;
      c.top = v;
      c.seed = p;
      out.push_back(std::move(c));
    }
    Component& c = out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    c.vertices.push_back(v);
    for (Vertex ch : t.children(v)) {
      if (in_w[static_cast<std::size_t>(ch)]) c.below.push_back(ch);
    }
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation("fine partition stage bound violated: " + what);
}

}  // namespace

StagedPartition fine_partition_staged(const RootedTree& t, int ell) {
  if (ell < 1) throw InputError("ell must be at least 1");
  const int n = t.size();
  const auto idx = [](Vertex v) { return static_cast<std::size_t>(v); };
  StagedPartition result;
  PartitionStages& st = result.stages;

  // W1: bottom-up cuts of end subtrees with more than ell vertices.
  Flags w(static_cast<std::size_t>(n), 0);
  {
    std::vector<int> residual(static_cast<std::size_t>(n), 1);
    const auto& order = t.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Vertex v = *it;
      for (Vertex c : t.children(v)) residual[idx(v)] += residual[idx(c)];
      if (residual[idx(v)] > ell) {
        w[idx(v)] = 1;
        st.cuts.push_back(v);
        residual[idx(v)] = 1;
      }
    }
    std::stable_sort(st.cuts.begin(), st.cuts.end(), [&](Vertex a, Vertex b) {
      if (t.depth(a) != t.depth(b)) return t.depth(a) > t.depth(b);
      return a < b;
    });
    w[idx(t.root())] = 1;
    if (st.cuts.empty() || st.cuts.back() != t.root()) st.cuts.push_back(t.root());
  }
  st.w1 = set_of(w);
  const auto w1 = static_cast<long long>(st.w1.size());
  require(w1 * ell <= static_cast<long long>(n) + ell, "|W1| <= n/ell + 1");

  // W2: split components touching more than two cut vertices at their branch points.
  {
    Flags spine(static_cast<std::size_t>(n), 0);  // ancestor closure of W1
    for (Vertex v : st.w1) {
      for (Vertex u = v; u >= 0 && !spine[idx(u)]; u = t.parent(u)) spine[idx(u)] = 1;
    }
    auto spine_degree = [&](Vertex v) {
      int d = t.parent(v) >= 0 ? 1 : 0;
      for (Vertex c : t.children(v)) d += spine[idx(c)] ? 1 : 0;
      return d;
    };
    Flags next = w;
    for (const Component& c : components_outside(t, w)) {
      if (c.anchor_count() <= 2) continue;
      for (Vertex v : c.vertices) {
        if (spine[idx(v)] && spine_degree(v) >= 3) next[idx(v)] = 1;
      }
    }
    w = std::move(next);
  }
  st.w2 = set_of(w);
  require(static_cast<long long>(st.w2.size()) <= 2 * w1, "|W2| <= 2|W1|");

  // W3: add parents.
  for (Vertex v : st.w2) {
    if (t.parent(v) >= 0) w[idx(t.parent(v))] = 1;
  }
  st.w3 = set_of(w);
  require(static_cast<long long>(st.w3.size()) <= 4 * w1, "|W3| <= 4|W1|");

  // W4: cut the top of every component adjacent to cut vertices of both parities.
  {
    Flags next = w;
    auto comps = components_outside(t, w);
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) { return a.top < b.top; });
    for (const Component& c : comps) {
      bool even = false;
      bool odd = false;
      auto note = [&](Vertex z) { (t.depth(z) % 2 == 0 ? even : odd) = true; };
      if (c.seed >= 0) note(c.seed);
      for (Vertex z : c.below) note(z);
      if (even && odd) next[idx(c.top)] = 1;
    }
    w = std::move(next);
  }
  st.w4 = set_of(w);
  require(static_cast<long long>(st.w4.size()) <= 8 * w1, "|W4| <= 8|W1|");

  // W5: cut along the connecting path of short internal components.
  {
    Flags next = w;
    for (const Component& c : components_outside(t, w)) {
      if (c.is_end() || c.seed < 0 || c.below.size() != 1) continue;
      Vertex z2 = c.below.front();
      if (t.depth(z2) - t.depth(c.seed) >= 8) continue;
      for (Vertex u = t.parent(z2); u != c.seed; u = t.parent(u)) next[idx(u)] = 1;
    }
    w = std::move(next);
  }
  st.w5 = set_of(w);
  require(static_cast<long long>(st.w5.size()) <= 64 * w1, "|W5| <= 64|W1|");

  // Class choice and X.
  auto comps = components_outside(t, w);
  for (const Component& c : comps) {
    if (!c.is_end()) continue;
    (t.depth(c.seed) % 2 == 0 ? st.end_mass_a : st.end_mass_b) += static_cast<long long>(c.vertices.size());
  }
  st.swapped = st.end_mass_a < st.end_mass_b;
  const int a_parity = st.swapped ? 1 : 0;
  auto in_a = [&](Vertex v) { return t.depth(v) % 2 == a_parity; };
  {
    Flags xs(static_cast<std::size_t>(n), 0);
    for (const Component& c : comps) {
      if (c.is_end() || in_a(c.seed)) continue;
      xs[idx(c.top)] = 1;
      for (Vertex z : c.below) xs[idx(t.parent(z))] = 1;
    }
    st.x = set_of(xs);
    for (Vertex v : st.x) w[idx(v)] = 1;
  }
  require(st.x.size() <= 2 * st.w5.size(), "|X| <= 2|W5|");

  FinePartition& p = result.partition;
  p.ell = ell;
  std::vector<Vertex> wa;
  std::vector<Vertex> wb;
  for (int v = 0; v < n; ++v) {
    if (w[idx(v)]) (in_a(v) ? wa : wb).push_back(v);
  }
  p.w_a = VertexSet::from(std::move(wa));
  p.w_b = VertexSet::from(std::move(wb));
  for (const Component& c : components_outside(t, w)) {
    Shrub s;
    s.vertices = VertexSet::from(c.vertices);
    s.root = c.top;
    s.seed = c.seed;
    s.cls = in_a(c.seed) ? ShrubClass::A : ShrubClass::B;
    s.kind = c.is_end() ? ShrubKind::End : ShrubKind::Internal;
    if (!c.below.empty()) s.second_anchor = *std::min_element(c.below.begin(), c.below.end());
    p.shrubs.push_back(std::move(s));
  }
  std::sort(p.shrubs.begin(), p.shrubs.end(), [](const Shrub& a, const Shrub& b) { return a.root < b.root; });
  return result;
}

FinePartition fine_partition(const RootedTree& t, int ell) { return fine_partition_staged(t, ell).partition; }

bool ClauseReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

const ClauseResult& ClauseReport::clause(const std::string& name) const {
  for (const auto& c : clauses) {
    if (c.clause == name) return c;
  }
  throw InputError("no clause named " + name);
}

std::size_t ClauseReport::failure_count() const {
  std::size_t total = 0;
  for (const auto& c : clauses) total += c.failures.size();
  return total;
}

ClauseReport validate_fine_partition(const RootedTree& t, int ell, const FinePartition& p) {
  const int n = t.size();
  const auto idx = [](Vertex v) { return static_cast<std::size_t>(v); };
  ClauseReport report;
  for (const char* name : {"structure", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"}) {
    report.clauses.push_back({name, true, {}});
  }
  auto fail = [&](const std::string& name, const std::string& what) {
    for (auto& c : report.clauses) {
      if (c.clause == name) {
        c.passed = false;
        c.failures.push_back(what);
        return;
      }
    }
  };
  auto vs = [](Vertex v) { return std::to_string(v); };
  auto shrub_name = [](std::size_t i) { return "shrub " + std::to_string(i); };

  if (ell < 1) fail("structure", "ell must be at least 1");
  if (p.ell != ell) fail("structure", "partition records ell = " + std::to_string(p.ell));
  bool in_range = p.w_a.within(n) && p.w_b.within(n);
  for (const auto& s : p.shrubs) in_range = in_range && s.vertices.within(n);
  if (!in_range) {
    fail("structure", "vertex ids outside the tree");
    return report;
  }

  // (a) partition, with shrubs being whole components of T − W.
  std::vector<int> owner(static_cast<std::size_t>(n), -3);  // -1 W_A, -2 W_B, i shrub
  std::vector<int> times(static_cast<std::size_t>(n), 0);
  for (Vertex v : p.w_a) {
    owner[idx(v)] = -1;
    ++times[idx(v)];
  }
  for (Vertex v : p.w_b) {
    owner[idx(v)] = -2;
    ++times[idx(v)];
  }
  for (std::size_t i = 0; i < p.shrubs.size(); ++i) {
    if (p.shrubs[i].vertices.empty()) fail("structure", shrub_name(i) + " is empty");
    for (Vertex v : p.shrubs[i].vertices) {
      owner[idx(v)] = static_cast<int>(i);
      ++times[idx(v)];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (times[idx(v)] == 0) fail("a", "vertex " + vs(v) + " is not covered");
    if (times[idx(v)] > 1) fail("a", "vertex " + vs(v) + " is covered " + std::to_string(times[idx(v)]) + " times");
  }
  for (auto [c, par] : t.edges()) {
    int oc = owner[idx(c)];
    int op = owner[idx(par)];
    if (oc >= 0 && op >= 0 && oc != op) {
      fail("a", "vertex " + vs(c) + " (" + shrub_name(idx(oc)) + ") is adjacent to vertex " + vs(par) + " (" +
                    shrub_name(idx(op)) + "); shrubs must be components of T - W");
    }
  }
  const bool partition_ok = report.clause("a").passed;

  // (b)
  if (!p.w_a.contains(t.root()) && !p.w_b.contains(t.root())) fail("b", "root " + vs(t.root()) + " is not a cut vertex");

  // (c)
  const long long big = static_cast<long long>(std::max(p.w_a.size(), p.w_b.size()));
  if (big * ell > 336LL * n) {
    fail("c", "max(|W_A|, |W_B|) = " + std::to_string(big) + " exceeds 336*" + std::to_string(n) + "/" +
                  std::to_string(ell));
  }

  // (d) distance parity between cut vertices.
  {
    auto check_same = [&](const VertexSet& s, const char* name) {
      if (s.empty()) return;
      Vertex ref = s.front();
      for (Vertex v : s) {
        if ((t.depth(v) - t.depth(ref)) % 2 != 0) {
          fail("d", "vertices " + vs(ref) + " and " + vs(v) + " of " + name + " are at odd distance");
          return;
        }
      }
    };
    check_same(p.w_a, "W_A");
    check_same(p.w_b, "W_B");
    if (!p.w_a.empty() && !p.w_b.empty()) {
      for (Vertex v : p.w_b) {
        if ((t.depth(v) - t.depth(p.w_a.front())) % 2 == 0) {
          fail("d", "vertices " + vs(p.w_a.front()) + " (W_A) and " + vs(v) + " (W_B) are at even distance");
          break;
        }
      }
    }
  }

  auto adjacent_to = [&](const Shrub& s, const VertexSet& target) {
    std::vector<std::pair<Vertex, Vertex>> hits;  // (shrub vertex, target vertex)
    for (Vertex v : s.vertices) {
      for (Vertex u : t.neighbours(v)) {
        if (target.contains(u)) hits.emplace_back(v, u);
      }
    }
    return hits;
  };
  const VertexSet cut = p.cut_vertices();
  std::vector<char> internal(p.shrubs.size(), 0);

  long long end_mass_a = 0;
  long long mass_b = 0;
  for (std::size_t i = 0; i < p.shrubs.size(); ++i) {
    const Shrub& s = p.shrubs[i];
    if (s.vertices.empty()) continue;
    const std::string name = shrub_name(i);
    const bool connected = is_connected_in(t, s.vertices);
    if (!connected) fail("structure", name + " is not connected");

    // (e)
    if (static_cast<long long>(s.vertices.size()) > ell) {
      fail("e", name + " has " + std::to_string(s.vertices.size()) + " vertices, more than ell = " + std::to_string(ell));
    }
    // (f)
    const VertexSet& other = s.cls == ShrubClass::A ? p.w_b : p.w_a;
    for (auto [v, u] : adjacent_to(s, other)) {
      fail("f", name + " (class " + to_string(s.cls) + ") has vertex " + vs(v) + " adjacent to " + vs(u) + " in W_" +
                    (s.cls == ShrubClass::A ? "B" : "A"));
    }
    if (!connected) continue;

    Vertex top = s.vertices.front();
    for (Vertex v : s.vertices) {
      if (t.depth(v) < t.depth(top)) top = v;
    }
    const Vertex seed = t.parent(top);
    // (g)
    if (seed < 0) {
      fail("g", name + " contains the root and has no seed");
    } else if (!cut.contains(seed)) {
      fail("g", name + " has seed " + vs(seed) + " outside W_A and W_B");
    }
    // (h), (i)
    std::vector<Vertex> anchors;
    for (auto [v, u] : adjacent_to(s, cut)) anchors.push_back(u);
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
    if (anchors.size() > 2) {
      fail("h", name + " is adjacent to " + std::to_string(anchors.size()) + " cut vertices " +
                    to_string(VertexSet::from(anchors)));
    }
    for (std::size_t a = 0; a < anchors.size(); ++a) {
      for (std::size_t b = a + 1; b < anchors.size(); ++b) {
        int d = dist(t, anchors[a], anchors[b]);
        if (d < 6) {
          fail("i", name + " has anchors " + vs(anchors[a]) + " and " + vs(anchors[b]) + " at distance " +
                        std::to_string(d));
        }
      }
    }
    // end subtree iff no vertex has a child outside the shrub
    bool is_end = true;
    for (Vertex v : s.vertices) {
      for (Vertex c : t.children(v)) {
        if (!s.vertices.contains(c)) is_end = false;
      }
    }
    internal[i] = is_end ? 0 : 1;
    // (k)
    if (s.cls == ShrubClass::B && !is_end) fail("k", name + " is an internal tree in S_B");
    if (s.cls == ShrubClass::A && is_end) end_mass_a += static_cast<long long>(s.vertices.size());
    if (s.cls == ShrubClass::B) mass_b += static_cast<long long>(s.vertices.size());

    // recorded metadata
    if (s.root != top) fail("structure", name + " records root " + vs(s.root) + " but its top vertex is " + vs(top));
    if (s.seed != seed) fail("structure", name + " records seed " + vs(s.seed) + " but its seed is " + vs(seed));
    if ((s.kind == ShrubKind::End) != is_end) fail("structure", name + " records the wrong kind");
    if (seed >= 0 && cut.contains(seed)) {
      ShrubClass actual = p.w_a.contains(seed) ? ShrubClass::A : ShrubClass::B;
      if (actual != s.cls) fail("structure", name + " is filed in S_" + to_string(s.cls) + " but its seed is in W_" + to_string(actual));
    }
    std::optional<Vertex> below;
    for (Vertex u : anchors) {
      if (u != seed) below = below ? std::min(*below, u) : u;
    }
    if (below != s.second_anchor) fail("structure", name + " records the wrong second anchor");
  }

  // (j) internal shrubs must not come within distance two along the tree order.
  if (partition_ok) {
    for (std::size_t i = 0; i < p.shrubs.size(); ++i) {
      if (!internal[i]) continue;
      for (Vertex v : p.shrubs[i].vertices) {
        Vertex u = v;
        for (int step = 1; step <= 2; ++step) {
          u = t.parent(u);
          if (u < 0) break;
          int o = owner[idx(u)];
          if (o >= 0 && static_cast<std::size_t>(o) != i && internal[idx(o)]) {
            fail("j", "vertex " + vs(u) + " (" + shrub_name(idx(o)) + ") precedes vertex " + vs(v) + " (" +
                          shrub_name(i) + ") at distance " + std::to_string(step));
          }
        }
      }
    }
  }

  // (l)
  if (end_mass_a < mass_b) {
    fail("l", "end shrubs of S_A have " + std::to_string(end_mass_a) + " vertices but S_B has " +
                  std::to_string(mass_b));
  }
  return report;
}

std::vector<VertexSet> hubs(const RootedTree& t, const FinePartition& p) {
  const VertexSet cut = p.cut_vertices();
  std::vector<std::vector<Vertex>> groups;
  std::map<Vertex, std::size_t> group_of;
  for (Vertex v : t.bfs_order()) {
    if (!cut.contains(v)) continue;
    Vertex par = t.parent(v);
    if (par >= 0 && cut.contains(par)) {
      std::size_t g = group_of.at(par);
      group_of[v] = g;
      groups[g].push_back(v);
    } else {
      group_of[v] = groups.size();
      groups.push_back({v});
    }
  }
  std::vector<VertexSet> out;
  std::vector<std::pair<Vertex, std::size_t>> order;
  for (std::size_t g = 0; g < groups.size(); ++g) order.emplace_back(groups[g].front(), g);
  std::sort(order.begin(), order.end());
  for (auto [top, g] : order) out.push_back(VertexSet::from(groups[g]));
  return out;
}

std::vector<SkeletonItem> ordered_skeleton(const RootedTree& t, const FinePartition& p) {
  ClauseReport report = validate_fine_partition(t, p.ell, p);
  if (!report.all_passed()) throw InputError("ordered skeleton needs a valid fine partition");

  std::vector<SkeletonItem> items;
  for (std::size_t i = 0; const auto& h : hubs(t, p)) items.push_back({SkeletonKind::Hub, h, i++});
  for (std::size_t i = 0; i < p.shrubs.size(); ++i) items.push_back({SkeletonKind::Shrub, p.shrubs[i].vertices, i});

  const int n = t.size();
  std::vector<std::size_t> item_of(static_cast<std::size_t>(n));
  std::vector<Vertex> top(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    top[i] = items[i].vertices.front();
    for (Vertex v : items[i].vertices) {
      item_of[static_cast<std::size_t>(v)] = i;
      if (t.depth(v) < t.depth(top[i])) top[i] = v;
    }
  }
  std::vector<std::vector<std::size_t>> kids(items.size());
  std::size_t start = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Vertex par = t.parent(top[i]);
    if (par < 0) {
      start = i;
    } else {
      kids[item_of[static_cast<std::size_t>(par)]].push_back(i);
    }
  }
  for (auto& k : kids) {
    std::sort(k.begin(), k.end(), [&](std::size_t a, std::size_t b) { return top[a] < top[b]; });
  }
  std::vector<SkeletonItem> out;
  std::vector<std::size_t> stack{start};
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    out.push_back(items[i]);
    for (auto it = kids[i].rbegin(); it != kids[i].rend(); ++it) stack.push_back(*it);
  }
  return out;
}

SubshrubSplit classify_subshrubs(const RootedTree& t, const FinePartition& p, const Shrub& s) {
  if (s.kind != ShrubKind::Internal) throw InputError("subshrubs are defined for internal shrubs only");
  if (std::find(p.shrubs.begin(), p.shrubs.end(), s) == p.shrubs.end()) {
    throw InputError("shrub is not part of the partition");
  }
  if (!s.vertices.contains(s.root)) throw InputError("shrub root is not a shrub vertex");
  SubshrubSplit split;
  std::vector<VertexSet> parts;
  for (Vertex c : t.children(s.root)) {
    if (!s.vertices.contains(c)) continue;
    parts.push_back(set_intersection(up_closure(t, c), s.vertices));
  }
  auto touches_wa = [&](const VertexSet& part) {
    for (Vertex v : part) {
      for (Vertex u : t.neighbours(v)) {
        if (p.w_a.contains(u)) return true;
      }
    }
    return false;
  };
  std::optional<std::size_t> principal;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!touches_wa(parts[i])) continue;
    if (principal) throw InputError("shrub has two subshrubs adjacent to W_A");
    principal = i;
  }
  if (!principal) throw InputError("shrub has no subshrub adjacent to W_A");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i == *principal) {
      split.principal = parts[i];
    } else {
      split.peripherals.push_back(parts[i]);
    }
  }
  std::sort(split.peripherals.begin(), split.peripherals.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return split;
}

}  // namespace lks
