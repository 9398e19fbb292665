#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lks/embedding.hpp"
#include "lks/errors.hpp"

namespace lks::detail {

/// Precondition bookkeeping: structural checks always throw, quantitative ones
/// only when the hypotheses are enforced.
class Hypotheses {
 public:
  Hypotheses(std::string who, bool enforce) : who_(std::move(who)), enforce_(enforce) {}

  void structural(bool ok, const std::string& what, std::optional<Vertex> v = std::nullopt) const {
    if (!ok) throw PreconditionError(who_ + ": " + what, v);
  }
  void quantitative(bool ok, const std::string& what, std::optional<Vertex> v = std::nullopt) const {
    if (!ok && enforce_) throw PreconditionError(who_ + ": " + what, v);
  }
  bool enforced() const { return enforce_; }
  const std::string& who() const { return who_; }

 private:
  std::string who_;
  bool enforce_;
};

using Mask = std::vector<char>;

inline Mask mask_of(int n, const VertexSet& s) {
  Mask m(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) m[static_cast<std::size_t>(v)] = 1;
  return m;
}

/// Host vertices taken by any embedding built so far.
class Occupancy {
 public:
  explicit Occupancy(int n) : used_(static_cast<std::size_t>(n), 0) {}
  bool free(Vertex h) const { return used_[static_cast<std::size_t>(h)] == 0; }
  void take(Vertex h) { used_[static_cast<std::size_t>(h)] = 1; }
  void release(Vertex h) { used_[static_cast<std::size_t>(h)] = 0; }

 private:
  std::vector<char> used_;
};

/// Where a tree vertex may go: the smallest free admissible neighbour of its
/// parent's image in `preferred`, failing that in `fallback`.
struct Target {
  const Mask* preferred = nullptr;
  const Mask* fallback = nullptr;
};

/// Places `order` (each parent mapped before its children) one vertex at a
/// time. On failure everything placed by this call is undone and the evidence
/// returned.
inline std::optional<FailureEvidence> greedy_extend(const Graph& g, const RootedTree& t, PartialEmbedding& e,
                                                    Occupancy& occ, const std::vector<Vertex>& order,
                                                    const std::function<Target(Vertex)>& target) {
  std::vector<Vertex> placed;
  for (Vertex v : order) {
    Vertex p = t.parent(v);
    Vertex anchor = e[p];
    if (anchor < 0) throw ContractViolation("greedy extension reached a vertex before its parent");
    Target tg = target(v);
    Vertex pick = -1;
    long long in_target = 0;
    for (const Mask* ok : {tg.preferred, tg.fallback}) {
      if (ok == nullptr || pick >= 0) continue;
      for (Vertex h : g.neighbours(anchor)) {
        if (!(*ok)[static_cast<std::size_t>(h)]) continue;
        ++in_target;
        if (occ.free(h)) {
          pick = h;
          break;
        }
      }
    }
    if (pick < 0) {
      FailureEvidence ev;
      ev.stuck_tree_vertex = v;
      ev.host_anchor = anchor;
      ev.counts = {{"anchor_degree", g.degree(anchor)},
                   {"anchor_neighbours_in_target", in_target},
                   {"free_neighbours_in_target", 0},
                   {"tree_vertices_placed", static_cast<long long>(e.mapped_count())}};
      for (Vertex u : placed) {
        occ.release(e[u]);
        e.map[static_cast<std::size_t>(u)] = -1;
      }
      return ev;
    }
    e.map[static_cast<std::size_t>(v)] = pick;
    occ.take(pick);
    placed.push_back(v);
  }
  return std::nullopt;
}

/// BFS order of t without the vertices for which `skip` holds.
inline std::vector<Vertex> bfs_without(const RootedTree& t, const std::function<bool(Vertex)>& skip) {
  std::vector<Vertex> out;
  for (Vertex v : t.bfs_order()) {
    if (!skip(v)) out.push_back(v);
  }
  return out;
}

inline std::string describe(const FailureEvidence& ev) {
  std::string s = "stuck at tree vertex " + std::to_string(ev.stuck_tree_vertex) + " (anchor " +
                  std::to_string(ev.host_anchor) + ")";
  for (const auto& [k, v] : ev.counts) s += ", " + k + "=" + std::to_string(v);
  return s;
}

[[noreturn]] inline void fail_embed(const std::string& who, const FailureEvidence& ev) {
  throw EmbedFailure(who + ": greedy extension " + describe(ev), ev);
}

/// Evidence for a root that has no admissible image.
inline FailureEvidence root_evidence(Vertex root, long long candidates) {
  FailureEvidence ev;
  ev.stuck_tree_vertex = root;
  ev.counts = {{"root_candidates", candidates}};
  return ev;
}

inline Rational size_of(const VertexSet& s) { return Rational(static_cast<std::int64_t>(s.size())); }

}  // namespace lks::detail
