#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lks {

using Report = nlohmann::ordered_json;

/// "key: value" lines; nested objects indent by two spaces, lists of
/// objects use "- " items, lists of scalars print inline as [a, b, c].
std::string render_text(const Report& report);

/// Parsed command line. Rational parameters stay as the strings given
/// ("p/q") until a subcommand parses them.
struct RunConfig {
  std::string subcommand;
  std::optional<std::string> graph_path;
  std::vector<std::string> tree_paths;
  std::optional<std::string> embedding_path;
  std::optional<std::string> out_path;
  std::uint64_t seed = 0;
  std::optional<long long> ell, k, n, n_max, m, trials, samples;
  int retries = 16;
  std::optional<std::string> eps, gamma, beta, delta, tau, alpha, lambda, a;
  std::map<std::string, std::vector<std::string>> sets;  // --set NAME=1,2,3 (repeatable)
  std::vector<std::string> spots;                         // --spot 1,2:3,4
  std::optional<std::string> plan;                        // duplicate-sim: string over {0, 1, c}
  bool machine = false;
  bool verbose = false;
  bool relaxed = false;
  bool check_expander = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

/// Runs one subcommand. The report goes to `out` (or to cfg.out_path),
/// diagnostics to `err`.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command-line entry point: parses argv, then dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string usage_text();

}  // namespace lks
