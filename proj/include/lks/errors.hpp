#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lks {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad ids, infeasible parameters, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Text-format parse failure; `line()` is 1-based, 0 when not line-specific.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A hypothesis of an embedding procedure does not hold for the supplied instance.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what, std::optional<int> vertex = std::nullopt)
      : Error(what), vertex_(vertex) {}
  std::optional<int> vertex() const noexcept { return vertex_; }

 private:
  std::optional<int> vertex_;
};

/// Internal guarantee broken. Under verified hypotheses this indicates a bug.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Local degree counts around the place where a greedy extension got stuck.
struct FailureEvidence {
  int stuck_tree_vertex = -1;
  int host_anchor = -1;
  std::vector<std::pair<std::string, long long>> counts;
};

/// A greedy embedding ran out of candidates. Success is guaranteed under the
/// full hypotheses, so this is evidence that a statistically certified
/// hypothesis (regularity, avoidance, ...) does not actually hold.
class EmbedFailure : public Error {
 public:
  EmbedFailure(const std::string& what, FailureEvidence evidence)
      : Error(what), evidence_(std::move(evidence)) {}
  const FailureEvidence& evidence() const noexcept { return evidence_; }

 private:
  FailureEvidence evidence_;
};

/// Too many root candidates lack a witnessing dense spot.
class AvoidancePropertyViolation : public Error {
 public:
  AvoidancePropertyViolation(const std::string& what, std::vector<int> bad)
      : Error(what), bad_(std::move(bad)) {}
  const std::vector<int>& bad_vertices() const noexcept { return bad_; }

 private:
  std::vector<int> bad_;
};

/// A shadow is larger than nowhere-density allows.
class NowhereDensePropertyViolation : public Error {
 public:
  NowhereDensePropertyViolation(const std::string& what, std::size_t shadow_size)
      : Error(what), shadow_size_(shadow_size) {}
  std::size_t shadow_size() const noexcept { return shadow_size_; }

 private:
  std::size_t shadow_size_;
};

/// Every resampling attempt of a randomized embedder violated its balance target.
class StochasticFailure : public Error {
 public:
  StochasticFailure(const std::string& what, std::vector<long long> excess)
      : Error(what), excess_(std::move(excess)) {}
  /// Per tracked set: |P_j ∩ images| - |P_j ∩ reserved| in the last attempt.
  const std::vector<long long>& excess() const noexcept { return excess_; }

 private:
  std::vector<long long> excess_;
};

}  // namespace lks
