#include "lks/duplicate.hpp"

#include <cmath>

#include "lks/errors.hpp"
#include "lks/random.hpp"

namespace lks {

std::string to_string(StepMode m) {
  switch (m) {
    case StepMode::BothZero: return "both-zero";
    case StepMode::BothOne: return "both-one";
    case StepMode::CoinFlip: return "coin-flip";
  }
  return "?";
}

long long DuplicateTrace::sum_x() const {
  long long s = 0;
  for (const auto& st : steps) s += st.x;
  return s;
}

long long DuplicateTrace::sum_y() const {
  long long s = 0;
  for (const auto& st : steps) s += st.y;
  return s;
}

std::vector<std::string> trace_violations(const DuplicateTrace& trace) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    if ((s.x != 0 && s.x != 1) || (s.y != 0 && s.y != 1)) {
      out.push_back(at + "values must be bits");
      continue;
    }
    switch (s.mode) {
      case StepMode::BothZero:
        if (s.x != 0 || s.y != 0) out.push_back(at + "both-zero step is not (0,0)");
        break;
      case StepMode::BothOne:
        if (s.x != 1 || s.y != 1) out.push_back(at + "both-one step is not (1,1)");
        break;
      case StepMode::CoinFlip:
        if (s.x + s.y != 1) out.push_back(at + "coin-flip step must have exactly one 1");
        break;
    }
  }
  if (trace.sum_x() + trace.sum_y() > trace.budget) {
    out.push_back("total " + std::to_string(trace.sum_x() + trace.sum_y()) + " exceeds the budget " +
                  std::to_string(trace.budget));
  }
  return out;
}

namespace {

long long plan_cost(const std::vector<StepMode>& plan) {
  long long cost = 0;
  for (StepMode m : plan) cost += m == StepMode::BothOne ? 2 : (m == StepMode::CoinFlip ? 1 : 0);
  return cost;
}

void check_plan(const std::vector<StepMode>& plan, long long ell) {
  if (ell < 0) throw InputError("budget must be non-negative");
  long long cost = plan_cost(plan);
  if (cost > ell) {
    throw InputError("plan needs " + std::to_string(cost) + " units but the budget is " + std::to_string(ell));
  }
}

DuplicateTrace run(const std::vector<StepMode>& plan, long long ell, Rng& rng) {
  DuplicateTrace t;
  t.budget = ell;
  t.steps.reserve(plan.size());
  for (StepMode m : plan) {
    DuplicateStep s{0, 0, m};
    if (m == StepMode::BothOne) {
      s.x = s.y = 1;
    } else if (m == StepMode::CoinFlip) {
      s.x = rng.coin() ? 1 : 0;
      s.y = 1 - s.x;
    }
    t.steps.push_back(s);
  }
  return t;
}

/// ΣX − ΣY without materializing the trace.
long long run_difference(const std::vector<StepMode>& plan, Rng& rng) {
  long long d = 0;
  for (StepMode m : plan) {
    if (m == StepMode::CoinFlip) d += rng.coin() ? 1 : -1;
  }
  return d;
}

}  // namespace

DuplicateTrace simulate(const std::vector<StepMode>& plan, long long ell, std::uint64_t seed) {
  check_plan(plan, ell);
  Rng rng(seed);
  return run(plan, ell, rng);
}

double tail_bound(double a, long long ell) {
  if (ell < 1) throw InputError("tail bound needs ell >= 1");
  if (!(a > 0)) throw InputError("tail bound needs a > 0");
  return std::exp(-a * a / (2.0 * static_cast<double>(ell)));
}

double tail_bound(const Rational& a, long long ell) {
  if (a <= 0) throw InputError("tail bound needs a > 0");
  return tail_bound(boost::rational_cast<double>(a), ell);
}

double empirical_tail(const std::vector<StepMode>& plan, long long ell, double a, long long trials,
                      std::uint64_t seed) {
  check_plan(plan, ell);
  if (trials < 1) throw InputError("need at least one trial");
  long long hits = 0;
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    if (static_cast<double>(run_difference(plan, rng)) >= a) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::vector<long long> difference_histogram(const std::vector<StepMode>& plan, long long ell, long long trials,
                                            std::uint64_t seed) {
  check_plan(plan, ell);
  if (trials < 1) throw InputError("need at least one trial");
  long long flips = 0;
  for (StepMode m : plan) flips += m == StepMode::CoinFlip ? 1 : 0;
  std::vector<long long> hist(static_cast<std::size_t>(2 * flips + 1), 0);
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    hist[static_cast<std::size_t>(run_difference(plan, rng) + flips)] += 1;
  }
  return hist;
}

}  // namespace lks
