#include "lks/embedding.hpp"

#include <map>
#include <sstream>

#include "lks/errors.hpp"
#include "text_util.hpp"

namespace lks {

bool PartialEmbedding::total() const {
  for (Vertex h : map) {
    if (h < 0) return false;
  }
  return true;
}

std::size_t PartialEmbedding::mapped_count() const {
  std::size_t c = 0;
  for (Vertex h : map) c += h >= 0 ? 1 : 0;
  return c;
}

VertexSet PartialEmbedding::image() const {
  std::vector<Vertex> out;
  for (Vertex h : map) {
    if (h >= 0) out.push_back(h);
  }
  return VertexSet::from(std::move(out));
}

namespace {

void audit_into(EmbeddingAudit& audit, const std::string& prefix, const Graph& host, const RootedTree& t,
                const PartialEmbedding& e, const VertexSet& forbidden, bool require_total) {
  auto fail = [&](const std::string& what) {
    audit.valid = false;
    audit.violations.push_back(prefix + what);
  };
  if (static_cast<int>(e.map.size()) != t.size()) {
    fail("map has " + std::to_string(e.map.size()) + " entries for a tree of order " + std::to_string(t.size()));
    return;
  }
  std::map<Vertex, Vertex> preimage;
  bool in_range = true;
  for (Vertex v = 0; v < t.size(); ++v) {
    Vertex h = e[v];
    if (h < 0) {
      if (require_total) fail("tree vertex " + std::to_string(v) + " is unmapped");
      continue;
    }
    if (!host.valid(h)) {
      fail("tree vertex " + std::to_string(v) + " maps outside the host (" + std::to_string(h) + ")");
      in_range = false;
      continue;
    }
    auto [it, fresh] = preimage.emplace(h, v);
    if (!fresh) {
      fail("not injective: tree vertices " + std::to_string(it->second) + " and " + std::to_string(v) +
           " both map to " + std::to_string(h));
    }
    if (forbidden.contains(h)) fail("tree vertex " + std::to_string(v) + " maps into the forbidden set");
  }
  if (!in_range) return;
  for (auto [c, p] : t.edges()) {
    if (e[c] < 0 || e[p] < 0) continue;
    if (!host.has_edge(e[c], e[p])) {
      fail("edge " + std::to_string(c) + "-" + std::to_string(p) + " maps to non-edge " + std::to_string(e[c]) +
           "-" + std::to_string(e[p]));
    }
  }
  for (const auto& cons : e.constraints) {
    if (!cons.tree_vertices.within(t.size())) {
      fail("constraint " + cons.name + " names vertices outside the tree");
      continue;
    }
    for (Vertex v : cons.tree_vertices) {
      if (e[v] >= 0 && !cons.host_vertices.contains(e[v])) {
        fail("constraint " + cons.name + ": tree vertex " + std::to_string(v) + " maps to " +
             std::to_string(e[v]) + " outside the allowed set");
      }
    }
  }
}

}  // namespace

EmbeddingAudit audit_embedding(const Graph& host, const RootedTree& t, const PartialEmbedding& e,
                               const VertexSet& forbidden, bool require_total) {
  EmbeddingAudit audit;
  audit_into(audit, "", host, t, e, forbidden, require_total);
  return audit;
}

EmbeddingAudit audit_forest(const Graph& host, const std::vector<RootedTree>& trees,
                            const std::vector<PartialEmbedding>& embeddings, const VertexSet& forbidden,
                            bool require_total) {
  EmbeddingAudit audit;
  if (trees.size() != embeddings.size()) {
    audit.valid = false;
    audit.violations.push_back(std::to_string(embeddings.size()) + " embeddings for " +
                               std::to_string(trees.size()) + " trees");
    return audit;
  }
  std::map<Vertex, std::size_t> owner;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    std::string prefix = "embedding " + std::to_string(i) + ": ";
    audit_into(audit, prefix, host, trees[i], embeddings[i], forbidden, require_total);
    for (Vertex h : embeddings[i].image()) {
      auto [it, fresh] = owner.emplace(h, i);
      if (!fresh && it->second != i) {
        audit.valid = false;
        audit.violations.push_back(prefix + "host vertex " + std::to_string(h) + " also used by embedding " +
                                   std::to_string(it->second));
      }
    }
  }
  return audit;
}

std::string serialize_embeddings(const std::vector<PartialEmbedding>& embeddings,
                                 const std::vector<RootedTree>& trees) {
  if (embeddings.size() != trees.size()) throw InputError("one tree per embedding is required");
  std::ostringstream out;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const auto& e = embeddings[i];
    if (static_cast<int>(e.map.size()) != trees[i].size()) throw InputError("embedding size does not match its tree");
    out << "embedding " << i << '\n';
    for (std::size_t v = 0; v < e.map.size(); ++v) {
      if (e.map[v] >= 0) out << v << " -> " << e.map[v] << '\n';
    }
    for (const auto& c : e.constraints) {
      out << "constraint " << c.name << ':';
      for (Vertex v : c.tree_vertices) out << ' ' << v;
      out << " =>";
      for (Vertex h : c.host_vertices) out << ' ' << h;
      out << '\n';
    }
  }
  return out.str();
}

std::vector<PartialEmbedding> parse_embeddings(std::string_view text, const std::vector<RootedTree>& trees) {
  std::vector<PartialEmbedding> out;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& tok = line.tokens;
    if (tok[0] == "audit:") continue;
    if (tok[0] == "embedding") {
      detail::expect_tokens(line, 2);
      long long index = detail::parse_integer(tok[1], line.number);
      if (index != static_cast<long long>(out.size())) {
        throw ParseError(line.number, "embeddings must be numbered 0, 1, ... in order");
      }
      if (out.size() >= trees.size()) throw ParseError(line.number, "more embeddings than trees");
      out.emplace_back(trees[out.size()].size());
      continue;
    }
    if (out.empty()) throw ParseError(line.number, "expected an 'embedding' header first");
    PartialEmbedding& e = out.back();
    const int n = static_cast<int>(e.map.size());
    if (tok[0] == "constraint") {
      if (tok.size() < 3 || tok[1].size() < 2 || tok[1].back() != ':') {
        throw ParseError(line.number, "expected 'constraint NAME: tree ids => host ids'");
      }
      Placement p;
      p.name = std::string(tok[1].substr(0, tok[1].size() - 1));
      std::vector<Vertex> tv, hv;
      bool arrow = false;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        if (tok[i] == "=>") {
          if (arrow) throw ParseError(line.number, "repeated '=>'");
          arrow = true;
          continue;
        }
        long long x = detail::parse_integer(tok[i], line.number);
        if (x < 0 || x > 1'000'000'000) throw ParseError(line.number, "vertex id out of range");
        if (!arrow && x >= n) throw ParseError(line.number, "tree vertex " + std::to_string(x) + " out of range");
        (arrow ? hv : tv).push_back(static_cast<Vertex>(x));
      }
      if (!arrow) throw ParseError(line.number, "constraint without '=>'");
      p.tree_vertices = VertexSet::from(std::move(tv));
      p.host_vertices = VertexSet::from(std::move(hv));
      e.constraints.push_back(std::move(p));
      continue;
    }
    detail::expect_tokens(line, 3);
    if (tok[1] != "->") throw ParseError(line.number, "expected 'tree_vertex -> host_vertex'");
    long long t = detail::parse_integer(tok[0], line.number);
    long long h = detail::parse_integer(tok[2], line.number);
    if (t < 0 || t >= n) throw ParseError(line.number, "tree vertex " + std::to_string(t) + " out of range");
    if (h < 0 || h > 1'000'000'000) throw ParseError(line.number, "host vertex out of range");
    if (e.map[static_cast<std::size_t>(t)] >= 0) {
      throw ParseError(line.number, "tree vertex " + std::to_string(t) + " mapped twice");
    }
    e.map[static_cast<std::size_t>(t)] = static_cast<Vertex>(h);
  }
  if (out.size() != trees.size()) {
    throw ParseError(0, "expected " + std::to_string(trees.size()) + " embeddings, found " +
                            std::to_string(out.size()));
  }
  return out;
}

}  // namespace lks
