#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/rational.hpp>

namespace lks {

using Rational = boost::rational<std::int64_t>;

// Boost 1.74's mixed rational/integer equality recurses forever under C++20
// rewritten comparisons. Compare against Rational(...) instead.
template <class I>
  requires std::is_integral_v<I>
bool operator==(const Rational&, I) = delete;
template <class I>
  requires std::is_integral_v<I>
bool operator==(I, const Rational&) = delete;
template <class I>
  requires std::is_integral_v<I>
bool operator!=(const Rational&, I) = delete;
template <class I>
  requires std::is_integral_v<I>
bool operator!=(I, const Rational&) = delete;

/// Parses "p/q", "p" or "-p/q". Throws InputError on anything else or q == 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

std::int64_t floor_of(const Rational& r);
std::int64_t ceil_of(const Rational& r);

inline Rational rat(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

/// Smallest s with s^4 >= k^3, i.e. ceil(k^{3/4}) without floating point.
std::int64_t ceil_pow_three_quarters(std::int64_t k);

/// Largest s with s*s <= n.
std::int64_t isqrt(std::int64_t n);

}  // namespace lks
