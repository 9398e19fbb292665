#include "lks/regularity.hpp"

#include <algorithm>
#include <numeric>

#include "lks/errors.hpp"
#include "lks/random.hpp"

namespace lks {

std::string to_string(RegularityStatus s) {
  switch (s) {
    case RegularityStatus::RegularExact:
      return "RegularExact";
    case RegularityStatus::RegularSampled:
      return "RegularSampled";
    case RegularityStatus::IrregularWitness:
      return "IrregularWitness";
    case RegularityStatus::Unknown:
      break;
  }
  return "Unknown";
}

bool super_degree_condition(const Graph& g, const VertexSet& u, const VertexSet& w, const Rational& gamma) {
  if (u.empty() || w.empty()) return false;
  return Rational(mindeg(g, u, w)) >= gamma * static_cast<std::int64_t>(w.size()) &&
         Rational(mindeg(g, w, u)) >= gamma * static_cast<std::int64_t>(u.size());
}

namespace {

std::size_t min_size(const Rational& eps, std::size_t n) {
  std::int64_t s = ceil_of(eps * static_cast<std::int64_t>(n));
  return static_cast<std::size_t>(std::max<std::int64_t>(s, 1));
}

struct Searcher {
  const Graph& g;
  const VertexSet& u;
  const VertexSet& w;
  Rational eps;
  Rational density;
  std::size_t su;
  RegularityVerdict& verdict;

  // Tests the extreme |U'| choices for a fixed W'. Returns true on a witness.
  bool extremes(const std::vector<Vertex>& w_sub) {
    std::vector<std::pair<int, Vertex>> counts;
    counts.reserve(u.size());
    VertexSet ws = VertexSet::from(w_sub);
    for (Vertex x : u) counts.emplace_back(g.degree_into(x, ws), x);
    std::sort(counts.begin(), counts.end());
    const auto wn = static_cast<std::int64_t>(ws.size());
    std::vector<long long> prefix(counts.size() + 1, 0);
    for (std::size_t i = 0; i < counts.size(); ++i) prefix[i + 1] = prefix[i] + counts[i].first;
    const long long total = prefix.back();
    for (std::size_t s = su; s <= counts.size(); ++s) {
      ++verdict.subpairs_examined;
      const auto sn = static_cast<std::int64_t>(s);
      Rational low(prefix[s], sn * wn);
      Rational high(total - prefix[counts.size() - s], sn * wn);
      bool use_low = density - low >= eps;
      bool use_high = high - density >= eps;
      if (!use_low && !use_high) continue;
      std::vector<Vertex> chosen;
      for (std::size_t i = 0; i < s; ++i) {
        chosen.push_back(use_low ? counts[i].second : counts[counts.size() - 1 - i].second);
      }
      verdict.status = RegularityStatus::IrregularWitness;
      verdict.witness = std::make_pair(VertexSet::from(std::move(chosen)), ws);
      verdict.witness_density = use_low ? low : high;
      return true;
    }
    return false;
  }
};

}  // namespace

RegularityVerdict check_regularity(const Graph& g, const VertexSet& u, const VertexSet& w, const Rational& eps,
                                   const RegularityMode& mode, const std::optional<Rational>& super_gamma) {
  if (!disjoint(u, w)) throw InputError("regularity: the two sides must be disjoint");
  if (eps <= 0) throw InputError("regularity: eps must be positive");
  PairStats stats = degree_and_density(g, u, w);
  RegularityVerdict verdict;
  verdict.density = stats.density;
  if (super_gamma) verdict.super_regular = super_degree_condition(g, u, w, *super_gamma);

  const std::size_t su = min_size(eps, u.size());
  const std::size_t sw = min_size(eps, w.size());
  Searcher search{g, u, w, eps, stats.density, su, verdict};
  if (su > u.size() || sw > w.size()) {
    // No subpair is large enough to matter.
    verdict.status = mode.exact ? RegularityStatus::RegularExact : RegularityStatus::RegularSampled;
    return verdict;
  }

  if (mode.exact) {
    if (u.size() > kExactRegularityLimit || w.size() > kExactRegularityLimit) {
      throw InputError("exact regularity check is limited to sides of size " +
                       std::to_string(kExactRegularityLimit));
    }
    const std::size_t wn = w.size();
    std::vector<Vertex> w_sub;
    for (std::uint32_t mask = 1; mask < (1U << wn); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) < sw) continue;
      w_sub.clear();
      for (std::size_t i = 0; i < wn; ++i) {
        if (mask & (1U << i)) w_sub.push_back(w[i]);
      }
      if (search.extremes(w_sub)) return verdict;
    }
    verdict.status = RegularityStatus::RegularExact;
    return verdict;
  }

  if (mode.samples < 0) throw InputError("regularity: negative sample count");
  if (search.extremes(w.ids())) return verdict;
  Rng rng(mode.seed);
  std::vector<Vertex> w_pool = w.ids();
  std::vector<Vertex> u_pool = u.ids();
  for (int trial = 0; trial < mode.samples; ++trial) {
    rng.shuffle(w_pool);
    std::vector<Vertex> w_sub(w_pool.begin(), w_pool.begin() + static_cast<std::ptrdiff_t>(sw));
    if (search.extremes(w_sub)) return verdict;
    // Symmetric completion: a random U' against the extreme W'.
    rng.shuffle(u_pool);
    Searcher mirrored{g, w, u, eps, stats.density, sw, verdict};
    std::vector<Vertex> u_sub(u_pool.begin(), u_pool.begin() + static_cast<std::ptrdiff_t>(su));
    if (mirrored.extremes(u_sub)) {
      std::swap(verdict.witness->first, verdict.witness->second);
      return verdict;
    }
  }
  verdict.status = RegularityStatus::RegularSampled;
  return verdict;
}

}  // namespace lks
