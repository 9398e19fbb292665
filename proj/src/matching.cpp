#include "lks/matching.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "lks/errors.hpp"

namespace lks {

VertexSet RegularizedMatching::vertices() const {
  std::vector<Vertex> all;
  for (const auto& p : pairs) {
    all.insert(all.end(), p.a.begin(), p.a.end());
    all.insert(all.end(), p.b.begin(), p.b.end());
  }
  return VertexSet::from(std::move(all));
}

std::vector<std::pair<Vertex, Vertex>> RegularizedMatching::involution() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    if (p.a.size() != p.b.size()) {
      throw InputError("pair " + std::to_string(i) + " has sides of different sizes; no involution");
    }
    std::vector<Vertex> partner = p.partner.empty() ? p.b.ids() : p.partner;
    if (partner.size() != p.a.size() || VertexSet::from(partner) != p.b) {
      throw InputError("pair " + std::to_string(i) + ": partner map is not a bijection onto the second side");
    }
    for (std::size_t j = 0; j < partner.size(); ++j) {
      out.emplace_back(p.a[j], partner[j]);
      out.emplace_back(partner[j], p.a[j]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet ghost(const RegularizedMatching& m, const VertexSet& u) {
  auto inv = m.involution();
  std::vector<Vertex> out = u.ids();
  for (Vertex v : u) {
    auto it = std::lower_bound(inv.begin(), inv.end(), std::make_pair(v, std::numeric_limits<Vertex>::min()));
    if (it != inv.end() && it->first == v) out.push_back(it->second);
  }
  return VertexSet::from(std::move(out));
}

MatchingReport validate_regularized_matching(const Graph& g, const RegularizedMatching& m,
                                             std::optional<long long> host_maxdeg_bound, int samples,
                                             std::uint64_t seed) {
  MatchingReport report;
  auto fail = [&](std::string what) {
    report.valid = false;
    report.violations.push_back(std::move(what));
  };
  std::map<Vertex, std::size_t> owner;
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const auto& p = m.pairs[i];
    const std::string name = "pair " + std::to_string(i);
    if (!p.a.within(g.size()) || !p.b.within(g.size())) {
      fail(name + ": vertices outside the host");
      continue;
    }
    if (p.a.size() != p.b.size()) {
      fail(name + ": sides have sizes " + std::to_string(p.a.size()) + " and " + std::to_string(p.b.size()));
    }
    if (static_cast<long long>(std::min(p.a.size(), p.b.size())) < m.ell) {
      fail(name + ": side smaller than ell = " + std::to_string(m.ell));
    }
    for (const VertexSet* side : {&p.a, &p.b}) {
      for (Vertex v : *side) {
        auto [it, fresh] = owner.emplace(v, i);
        if (!fresh) {
          fail("disjointness: vertex " + std::to_string(v) + " lies in pair " + std::to_string(it->second) +
               " and pair " + std::to_string(i));
        }
      }
    }
    if (p.a.empty() || p.b.empty() || !disjoint(p.a, p.b)) {
      if (!disjoint(p.a, p.b)) fail(name + ": sides intersect");
      continue;
    }
    if (!p.partner.empty()) {
      if (p.partner.size() != p.a.size() || VertexSet::from(p.partner) != p.b) {
        fail(name + ": partner map is not a bijection");
      }
    }
    bool exact = p.a.size() <= kExactRegularityLimit && p.b.size() <= kExactRegularityLimit;
    RegularityMode mode = exact ? RegularityMode::exhaustive()
                                : RegularityMode::sampled(samples, seed + static_cast<std::uint64_t>(i));
    RegularityVerdict verdict = check_regularity(g, p.a, p.b, m.eps, mode);
    if (verdict.status == RegularityStatus::IrregularWitness) {
      fail(name + ": not eps-regular (witness " + to_string(verdict.witness->first) + " vs " +
           to_string(verdict.witness->second) + ")");
    }
    if (verdict.density < m.d) fail(name + ": density " + to_string(verdict.density) + " below d");
    if (host_maxdeg_bound) {
      if (g.max_degree() > *host_maxdeg_bound) {
        fail("host maximum degree " + std::to_string(g.max_degree()) + " exceeds the stated bound");
      }
      Rational cap = m.d > 0 ? Rational(*host_maxdeg_bound) / m.d : Rational(0);
      for (const VertexSet* side : {&p.a, &p.b}) {
        if (m.d > 0 && Rational(static_cast<std::int64_t>(side->size())) > cap) {
          fail(name + ": cluster of size " + std::to_string(side->size()) + " exceeds maxdeg/d = " + to_string(cap));
        }
      }
    }
    report.verdicts.push_back(std::move(verdict));
  }
  return report;
}

bool matching_cover_check(const RegularizedMatching& m, const std::vector<VertexSet>& f) {
  std::vector<char> covered(m.pairs.size(), 0);
  for (const auto& s : f) {
    bool found = false;
    for (std::size_t i = 0; i < m.pairs.size(); ++i) {
      if (m.pairs[i].a == s || m.pairs[i].b == s) {
        covered[i] = 1;
        found = true;
      }
    }
    if (!found) throw InputError("cover member " + to_string(s) + " is not a side of any pair");
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

}  // namespace lks
