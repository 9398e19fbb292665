#include <algorithm>
#include <array>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "lks/embed_kit.hpp"
#include "lks/errors.hpp"

namespace lks {

namespace {

void check_input(const RatioSplitInput& in) {
  if (in.xs.size() != in.ys.size()) throw InputError("xs and ys must have the same length");
  if (in.k < 0) throw InputError("K must be non-negative");
  Rational sx = std::accumulate(in.xs.begin(), in.xs.end(), Rational(0));
  if (sx <= 0) throw InputError("the x values must have a positive sum");
  for (std::size_t i = 0; i < in.xs.size(); ++i) {
    if (in.xs[i] < 0 || in.xs[i] > in.k || in.ys[i] < 0 || in.ys[i] > in.k) {
      throw InputError("entry " + std::to_string(i) + " lies outside [0, K]");
    }
  }
  if (in.x_prime < 0 || in.x_prime > sx) throw InputError("X' must lie in [0, sum of x]");
}

Rational sum_of(const std::vector<Rational>& v) { return std::accumulate(v.begin(), v.end(), Rational(0)); }

bool meets_bounds(const RatioSplitInput& in, const std::vector<std::size_t>& idx) {
  const Rational gamma = sum_of(in.ys) / sum_of(in.xs);
  Rational sx = 0, sy = 0;
  for (std::size_t i : idx) {
    sx += in.xs[i];
    sy += in.ys[i];
  }
  return sx <= in.x_prime && in.x_prime <= sx + in.k && sy - in.k <= gamma * in.x_prime &&
         gamma * in.x_prime <= sy + 2 * in.k;
}

using Big = boost::multiprecision::cpp_rational;

Big big(const Rational& r) { return Big(r.numerator()) / Big(r.denominator()); }

// Vertex of {f in [0,1]^s : Σ f x = X', Σ f y = γX'}: at most two coordinates
// stay fractional. Rounding them gives (a) and (b) for every γ.
std::vector<std::size_t> split_by_rounding(const RatioSplitInput& in) {
  const std::size_t s = in.xs.size();
  std::vector<Big> x(s), y(s);
  for (std::size_t i = 0; i < s; ++i) {
    x[i] = big(in.xs[i]);
    y[i] = big(in.ys[i]);
  }
  std::vector<Big> f(s, big(in.x_prime) / big(sum_of(in.xs)));
  auto fractional = [&] {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s; ++i) {
      if (f[i] > 0 && f[i] < 1) out.push_back(i);
    }
    return out;
  };
  for (auto frac = fractional(); frac.size() >= 3; frac = fractional()) {
    const std::array<std::size_t, 3> c{frac[0], frac[1], frac[2]};
    std::array<Big, 3> d{x[c[1]] * y[c[2]] - x[c[2]] * y[c[1]], x[c[2]] * y[c[0]] - x[c[0]] * y[c[2]],
                         x[c[0]] * y[c[1]] - x[c[1]] * y[c[0]]};
    if (d[0] == 0 && d[1] == 0 && d[2] == 0) {
      // rank at most one: any vector orthogonal to a nonzero row will do
      std::array<Big, 3> r{x[c[0]], x[c[1]], x[c[2]]};
      if (r[0] == 0 && r[1] == 0 && r[2] == 0) r = {y[c[0]], y[c[1]], y[c[2]]};
      if (r[0] == 0 && r[1] == 0 && r[2] == 0) d = {Big(1), Big(0), Big(0)};
      else if (r[0] != 0 || r[1] != 0) d = {r[1], -r[0], Big(0)};
      else d = {Big(0), r[2], -r[1]};
    }
    Big step = -1;
    for (int q = 0; q < 3; ++q) {
      if (d[q] == 0) continue;
      Big room = d[q] > 0 ? Big((1 - f[c[q]]) / d[q]) : Big(f[c[q]] / -d[q]);
      if (step < 0 || room < step) step = room;
    }
    for (int q = 0; q < 3; ++q) {
      f[c[q]] += step * d[q];
      if (f[c[q]] < 0 || f[c[q]] > 1) throw ContractViolation("ratio split: rounding left the unit cube");
    }
  }
  std::vector<std::size_t> base, frac = fractional();
  for (std::size_t i = 0; i < s; ++i) {
    if (f[i] == 1) base.push_back(i);
  }
  std::vector<std::vector<std::size_t>> options{base};
  for (std::size_t i : frac) {
    options.push_back(base);
    options.back().push_back(i);
  }
  for (auto& option : options) {
    std::sort(option.begin(), option.end());
    if (meets_bounds(in, option)) return option;
  }
  throw ContractViolation("ratio split: no rounding of the fractional vertex meets the bounds");
}

}  // namespace

std::vector<std::size_t> ratio_order(const RatioSplitInput& in) {
  check_input(in);
  if (sum_of(in.ys) > sum_of(in.xs)) throw PreconditionError("the prefix construction needs sum of y <= sum of x");
  const std::size_t s = in.xs.size();
  const Rational gamma = std::accumulate(in.ys.begin(), in.ys.end(), Rational(0)) /
                         std::accumulate(in.xs.begin(), in.xs.end(), Rational(0));
  std::vector<char> taken(s, 0);
  std::vector<std::size_t> order;
  Rational jx = 0, jy = 0;
  for (std::size_t step = 0; step < s; ++step) {
    const bool behind = gamma * jx >= jy;  // need an index with γx ≤ y
    std::size_t pick = s;
    for (std::size_t i = 0; i < s && pick == s; ++i) {
      if (taken[i]) continue;
      if (behind ? gamma * in.xs[i] <= in.ys[i] : gamma * in.xs[i] > in.ys[i]) pick = i;
    }
    if (pick == s) throw ContractViolation("ratio split: no admissible index although averaging guarantees one");
    taken[pick] = 1;
    order.push_back(pick);
    jx += in.xs[pick];
    jy += in.ys[pick];
    if (jy - in.k > gamma * jx || gamma * jx > jy + in.k) {
      throw ContractViolation("ratio split: prefix invariant broken after adding index " + std::to_string(pick));
    }
  }
  return order;
}

std::vector<std::size_t> split_by_ratio(const RatioSplitInput& in) {
  check_input(in);
  if (sum_of(in.ys) > sum_of(in.xs)) return split_by_rounding(in);
  std::vector<std::size_t> order = ratio_order(in);
  std::size_t p = 0;
  Rational sum = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sum += in.xs[order[i]];
    if (sum <= in.x_prime) p = i + 1;
  }
  std::vector<std::size_t> out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p));
  std::sort(out.begin(), out.end());
  if (!meets_bounds(in, out)) throw ContractViolation("ratio split: prefix choice misses the bounds");
  return out;
}

}  // namespace lks
