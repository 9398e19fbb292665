#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lks/rational.hpp"

namespace lks {

enum class StepMode { BothZero, BothOne, CoinFlip };

std::string to_string(StepMode m);

struct DuplicateStep {
  int x = 0;
  int y = 0;
  StepMode mode = StepMode::BothZero;

  friend bool operator==(const DuplicateStep&, const DuplicateStep&) = default;
};

/// A run of Duplicate(ℓ): pairs (X_i, Y_i) that are (0,0), (1,1) or, on a
/// fair coin flip, exactly one of (1,0) and (0,1); Σ(X_i + Y_i) ≤ ℓ.
struct DuplicateTrace {
  std::vector<DuplicateStep> steps;
  long long budget = 0;

  long long sum_x() const;
  long long sum_y() const;
  long long difference() const { return sum_x() - sum_y(); }
};

/// Empty when the trace obeys every rule of the process.
std::vector<std::string> trace_violations(const DuplicateTrace& trace);

/// Throws InputError when 2·#BothOne + #CoinFlip exceeds ell. Coin flips come
/// from Rng(seed) in step order, one bit each.
DuplicateTrace simulate(const std::vector<StepMode>& plan, long long ell, std::uint64_t seed);

/// exp(−a²/(2ℓ)). Throws InputError unless a > 0 and ell ≥ 1.
double tail_bound(const Rational& a, long long ell);
double tail_bound(double a, long long ell);

/// Fraction of `trials` runs with ΣX − ΣY ≥ a. Trial i draws its coins from
/// Rng::stream(seed, i). Throws InputError for trials < 1.
double empirical_tail(const std::vector<StepMode>& plan, long long ell, double a, long long trials,
                      std::uint64_t seed);

/// Counts of ΣX − ΣY over the trials, indexed by difference + #CoinFlip.
std::vector<long long> difference_histogram(const std::vector<StepMode>& plan, long long ell, long long trials,
                                            std::uint64_t seed);

}  // namespace lks
