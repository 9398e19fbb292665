#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lks/graph.hpp"
#include "lks/tree.hpp"

namespace lks {

/// X ↪ V: every mapped vertex of X must land in V.
struct Placement {
  std::string name;
  VertexSet tree_vertices;
  VertexSet host_vertices;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Partial map from tree ids to host ids (-1 = unmapped) with the placement
/// constraints it was built to respect.
struct PartialEmbedding {
  std::vector<Vertex> map;
  std::vector<Placement> constraints;

  PartialEmbedding() = default;
  explicit PartialEmbedding(int tree_size) : map(static_cast<std::size_t>(tree_size), -1) {}

  Vertex operator[](Vertex t) const { return map[static_cast<std::size_t>(t)]; }
  bool mapped(Vertex t) const { return map[static_cast<std::size_t>(t)] >= 0; }
  bool total() const;
  std::size_t mapped_count() const;
  /// Host vertices used.
  VertexSet image() const;

  friend bool operator==(const PartialEmbedding&, const PartialEmbedding&) = default;
};

struct EmbeddingAudit {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Injective, edge-preserving, every constraint respected, nothing mapped into
/// `forbidden`. With `require_total` every tree vertex must be mapped.
EmbeddingAudit audit_embedding(const Graph& host, const RootedTree& t, const PartialEmbedding& e,
                               const VertexSet& forbidden = {}, bool require_total = true);

/// Audits each embedding and additionally requires the images to be pairwise disjoint.
EmbeddingAudit audit_forest(const Graph& host, const std::vector<RootedTree>& trees,
                            const std::vector<PartialEmbedding>& embeddings, const VertexSet& forbidden = {},
                            bool require_total = true);

/// One block per embedding:
///   embedding 0
///   3 -> 17
///   constraint root: 0 => 4 5 9
/// Unmapped vertices are omitted. Lines starting with "audit:" are comments.
std::string serialize_embeddings(const std::vector<PartialEmbedding>& embeddings,
                                 const std::vector<RootedTree>& trees);
std::vector<PartialEmbedding> parse_embeddings(std::string_view text, const std::vector<RootedTree>& trees);

}  // namespace lks
