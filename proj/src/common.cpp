#include <algorithm>
#include <charconv>
#include <iterator>
#include <limits>
#include <sstream>

#include "lks/errors.hpp"
#include "lks/random.hpp"
#include "lks/rational.hpp"
#include "lks/vertex_set.hpp"

namespace lks {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InputError("not a rational: '" + std::string(whole) + "'");
  }
  return value;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t p = parse_int(text.substr(0, slash), text);
  std::int64_t q = parse_int(text.substr(slash + 1), text);
  if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

std::int64_t ceil_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw InputError("isqrt of negative number");
  std::int64_t lo = 0;
  std::int64_t hi = std::min<std::int64_t>(n, 3037000499LL);
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (mid * mid <= n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::int64_t ceil_pow_three_quarters(std::int64_t k) {
  if (k < 0) throw InputError("k^{3/4} of negative k");
  const __int128 cube = static_cast<__int128>(k) * k * k;
  auto fourth = [](std::int64_t x) {
    __int128 y = static_cast<__int128>(x) * x;
    return y * y;
  };
  // k^{3/4} <= k for k >= 1, so the answer lies in [0, k].
  std::int64_t lo = 0;
  std::int64_t hi = k;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (fourth(mid) >= cube) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::uint64_t Rng::stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InputError("Rng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

bool Rng::coin() {
  if (bits_left_ == 0) {
    bits_ = engine_();
    bits_left_ = 64;
  }
  bool bit = (bits_ & 1ULL) != 0;
  bits_ >>= 1;
  --bits_left_;
  return bit;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet::from(std::move(out));
}

std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool disjoint(const VertexSet& a, const VertexSet& b) { return intersection_size(a, b) == 0; }

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::string to_string(const VertexSet& s) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ", ";
    out << s[i];
  }
  out << ']';
  return out.str();
}

}  // namespace lks
