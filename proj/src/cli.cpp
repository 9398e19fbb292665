#include "lks/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lks/duplicate.hpp"
#include "lks/embed_kit.hpp"
#include "lks/errors.hpp"
#include "lks/fine_partition.hpp"
#include "lks/oracle.hpp"
#include "lks/regularity.hpp"

namespace lks {

namespace {

class IoError : public InputError {
 public:
  using InputError::InputError;
};

struct Outcome {
  Report report;
  int code = kExitOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Graph load_graph(const RunConfig& cfg) {
  if (!cfg.graph_path) throw InputError("--graph is required");
  return parse_graph(read_file(*cfg.graph_path));
}

std::vector<RootedTree> load_trees(const RunConfig& cfg) {
  if (cfg.tree_paths.empty()) throw InputError("--tree is required");
  std::vector<RootedTree> out;
  for (const auto& p : cfg.tree_paths) out.push_back(parse_tree(read_file(p)));
  return out;
}

RootedTree load_tree(const RunConfig& cfg) {
  if (cfg.tree_paths.size() != 1) throw InputError("exactly one --tree is required");
  return load_trees(cfg).front();
}

Rational need(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw InputError(std::string("--") + flag + " is required");
  return parse_rational(*v);
}

long long need(const std::optional<long long>& v, const char* flag) {
  if (!v) throw InputError(std::string("--") + flag + " is required");
  return *v;
}

VertexSet parse_ids(const std::string& text, const std::string& what) {
  std::vector<Vertex> ids;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || v < 0 || v > 1'000'000'000) throw InputError("bad vertex id '" + tok + "' in " + what);
    ids.push_back(static_cast<Vertex>(v));
  }
  return VertexSet::from(std::move(ids));
}

std::vector<VertexSet> sets_named(const RunConfig& cfg, const std::string& name) {
  std::vector<VertexSet> out;
  auto it = cfg.sets.find(name);
  if (it == cfg.sets.end()) return out;
  for (const auto& s : it->second) out.push_back(parse_ids(s, "--set " + name));
  return out;
}

std::optional<VertexSet> set_opt(const RunConfig& cfg, const std::string& name) {
  auto all = sets_named(cfg, name);
  if (all.empty()) return std::nullopt;
  if (all.size() > 1) throw InputError("--set " + name + " given more than once");
  return all.front();
}

VertexSet set_req(const RunConfig& cfg, const std::string& name) {
  auto s = set_opt(cfg, name);
  if (!s) throw InputError("--set " + name + "=... is required");
  return *s;
}

VertexSet checked(const Graph& g, VertexSet s, const std::string& name) {
  if (!s.within(g.size())) throw InputError("set " + name + " names vertices outside the graph");
  return s;
}

std::vector<DenseSpot> load_spots(const RunConfig& cfg, const Graph& g, long long m, const Rational& gamma) {
  std::vector<DenseSpot> out;
  for (const auto& text : cfg.spots) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw InputError("--spot expects U-ids:W-ids");
    VertexSet u = checked(g, parse_ids(text.substr(0, colon), "--spot"), "spot");
    VertexSet w = checked(g, parse_ids(text.substr(colon + 1), "--spot"), "spot");
    out.push_back(complete_spot(g, u, w, m, gamma));
  }
  if (out.empty()) throw InputError("at least one --spot is required");
  return out;
}

Report ids(const VertexSet& s) { return Report(s.ids()); }

Report embedding_entries(const PartialEmbedding& e) {
  Report map = Report::array();
  for (std::size_t v = 0; v < e.map.size(); ++v) {
    if (e.map[v] >= 0) map.push_back(std::to_string(v) + " -> " + std::to_string(e.map[v]));
  }
  return map;
}

Report audit_report(const EmbeddingAudit& audit) {
  Report r;
  r["valid"] = audit.valid;
  r["violations"] = audit.violations;
  return r;
}

void write_embeddings(const RunConfig& cfg, const std::vector<PartialEmbedding>& es,
                      const std::vector<RootedTree>& trees) {
  if (!cfg.embedding_path) return;
  std::ofstream out(*cfg.embedding_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + *cfg.embedding_path);
  out << serialize_embeddings(es, trees);
}

Outcome embedding_outcome(const RunConfig& cfg, const std::string& command, const Graph& g,
                          const std::vector<RootedTree>& trees, const std::vector<PartialEmbedding>& es,
                          Report extra = Report::object()) {
  Outcome o;
  o.report["command"] = command;
  o.report["status"] = "embedded";
  for (auto it = extra.begin(); it != extra.end(); ++it) o.report[it.key()] = it.value();
  Report list = Report::array();
  for (std::size_t i = 0; i < es.size(); ++i) {
    Report item;
    item["tree"] = i;
    item["order"] = trees[i].size();
    item["map"] = embedding_entries(es[i]);
    Report names = Report::array();
    for (const auto& c : es[i].constraints) names.push_back(c.name);
    item["constraints"] = names;
    list.push_back(item);
  }
  o.report["embeddings"] = list;
  EmbeddingAudit audit = audit_forest(g, trees, es);
  o.report["audit"] = audit_report(audit);
  o.code = audit.valid ? kExitOk : kExitViolation;
  write_embeddings(cfg, es, trees);
  return o;
}

EmbedOptions options_of(const RunConfig& cfg) { return EmbedOptions{!cfg.relaxed}; }

Outcome cmd_partition(const RunConfig& cfg) {
  RootedTree t = load_tree(cfg);
  const int ell = static_cast<int>(need(cfg.ell, "ell"));
  StagedPartition sp = fine_partition_staged(t, ell);
  const FinePartition& p = sp.partition;
  ClauseReport check = validate_fine_partition(t, ell, p);
  Outcome o;
  o.report["command"] = "partition";
  o.report["n"] = t.size();
  o.report["root"] = t.root();
  o.report["ell"] = ell;
  o.report["w_a"] = ids(p.w_a);
  o.report["w_b"] = ids(p.w_b);
  Report shrubs = Report::array();
  for (const auto& s : p.shrubs) {
    Report item;
    item["root"] = s.root;
    item["class"] = to_string(s.cls);
    item["kind"] = to_string(s.kind);
    item["seed"] = s.seed;
    item["second_anchor"] = s.second_anchor ? Report(*s.second_anchor) : Report(nullptr);
    item["vertices"] = ids(s.vertices);
    shrubs.push_back(item);
  }
  o.report["shrubs"] = shrubs;
  Report stages;
  stages["w1"] = sp.stages.w1.size();
  stages["w2"] = sp.stages.w2.size();
  stages["w3"] = sp.stages.w3.size();
  stages["w4"] = sp.stages.w4.size();
  stages["w5"] = sp.stages.w5.size();
  stages["x"] = sp.stages.x.size();
  stages["swapped"] = sp.stages.swapped;
  o.report["stages"] = stages;
  Report failures = Report::array();
  for (const auto& c : check.clauses) {
    for (const auto& f : c.failures) failures.push_back(c.clause + ": " + f);
  }
  o.report["valid"] = check.all_passed();
  o.report["failures"] = failures;
  o.code = check.all_passed() ? kExitOk : kExitViolation;
  return o;
}

Outcome cmd_skeleton(const RunConfig& cfg) {
  RootedTree t = load_tree(cfg);
  const int ell = static_cast<int>(need(cfg.ell, "ell"));
  FinePartition p = fine_partition(t, ell);
  Outcome o;
  o.report["command"] = "skeleton";
  o.report["n"] = t.size();
  o.report["ell"] = ell;
  Report items = Report::array();
  for (const auto& item : ordered_skeleton(t, p)) {
    Report r;
    r["kind"] = item.kind == SkeletonKind::Hub ? "hub" : "shrub";
    r["index"] = item.index;
    r["vertices"] = ids(item.vertices);
    items.push_back(r);
  }
  o.report["items"] = items;
  return o;
}

Outcome cmd_embed_greedy(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  RootedTree t = load_tree(cfg);
  VertexSet a = checked(g, set_req(cfg, "A"), "A");
  VertexSet b = checked(g, set_req(cfg, "B"), "B");
  long long k = cfg.k.value_or(t.size());
  PartialEmbedding e = embed_greedy_dense(g, a, b, t, k);
  return embedding_outcome(cfg, "embed-greedy", g, {t}, {e});
}

Outcome cmd_embed_regular(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  RootedTree t = load_tree(cfg);
  VertexSet c = checked(g, set_req(cfg, "C"), "C");
  VertexSet d = checked(g, set_req(cfg, "D"), "D");
  VertexSet x = checked(g, set_opt(cfg, "X").value_or(c), "X");
  VertexSet y = checked(g, set_opt(cfg, "Y").value_or(d), "Y");
  VertexSet xs = checked(g, set_opt(cfg, "Xstar").value_or(x), "Xstar");
  PartialEmbedding e =
      embed_in_regular_pair(g, c, d, x, y, xs, t, need(cfg.eps, "eps"), need(cfg.beta, "beta"), options_of(cfg));
  return embedding_outcome(cfg, "embed-regular", g, {t}, {e});
}

Outcome cmd_fill_pair(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  auto trees = load_trees(cfg);
  VertexSet c = checked(g, set_req(cfg, "C"), "C");
  VertexSet d = checked(g, set_req(cfg, "D"), "D");
  VertexSet u = checked(g, set_opt(cfg, "U").value_or(VertexSet{}), "U");
  VertexSet xs = checked(g, set_opt(cfg, "Xstar").value_or(set_difference(set_union(c, d), u)), "Xstar");
  FillResult r = fill_pair(g, c, d, trees, u, xs, need(cfg.eps, "eps"), need(cfg.beta, "beta"), options_of(cfg));
  Report plan;
  plan["case"] = r.plan.fill_case;
  plan["sides_swapped"] = r.plan.sides_swapped;
  plan["i1"] = r.plan.i1;
  plan["i2"] = r.plan.i2;
  plan["rest"] = r.plan.rest;
  plan["dummy_a"] = to_string(r.plan.dummy_a);
  plan["dummy_b"] = to_string(r.plan.dummy_b);
  plan["w"] = ids(r.plan.w);
  Report extra;
  extra["plan"] = plan;
  return embedding_outcome(cfg, "fill-pair", g, trees, r.embeddings, extra);
}

Outcome cmd_embed_avoiding(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  auto trees = load_trees(cfg);
  const long long k = need(cfg.k, "k");
  const Rational gamma = need(cfg.gamma, "gamma");
  auto spots = load_spots(cfg, g, floor_of(gamma * Rational(k)), gamma);
  std::vector<Vertex> all;
  for (const auto& s : spots) {
    auto vs = s.vertices();
    all.insert(all.end(), vs.begin(), vs.end());
  }
  VertexSet e = checked(g, set_opt(cfg, "E").value_or(VertexSet::from(all)), "E");
  VertexSet u = checked(g, set_opt(cfg, "U").value_or(VertexSet{}), "U");
  VertexSet us = checked(g, set_opt(cfg, "Ustar").value_or(e), "Ustar");
  auto es = embed_avoiding_forest(g, spots, e, trees, u, us, need(cfg.lambda, "lambda"), need(cfg.eps, "eps"), gamma, k,
                                  options_of(cfg));
  return embedding_outcome(cfg, "embed-avoiding", g, trees, es);
}

Outcome cmd_embed_expander(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  RootedTree t = load_tree(cfg);
  VertexSet v2 = checked(g, set_req(cfg, "V2"), "V2");
  VertexSet v3 = checked(g, set_req(cfg, "V3"), "V3");
  VertexSet u = checked(g, set_opt(cfg, "U").value_or(VertexSet{}), "U");
  VertexSet us = checked(g, set_opt(cfg, "Ustar").value_or(v2), "Ustar");
  std::vector<VertexSet> p;
  for (auto& s : sets_named(cfg, "P")) p.push_back(checked(g, std::move(s), "P"));
  ReservationResult r =
      embed_shrub_expander(g, v2, v3, u, us, p, t, need(cfg.delta, "delta"), need(cfg.gamma, "gamma"), need(cfg.k, "k"),
                           cfg.seed, cfg.retries, cfg.check_expander ? ExpanderTrust::Check : ExpanderTrust::Trusted,
                           options_of(cfg));
  Report extra;
  extra["reserved"] = ids(r.reserved);
  extra["slack"] = r.slack;
  extra["attempts"] = r.attempts;
  extra["excess"] = r.excess;
  return embedding_outcome(cfg, "embed-expander", g, {t}, r.embeddings, extra);
}

std::vector<StepMode> parse_plan(const std::string& text) {
  std::vector<StepMode> plan;
  for (char ch : text) {
    switch (ch) {
      case '0': plan.push_back(StepMode::BothZero); break;
      case '1': plan.push_back(StepMode::BothOne); break;
      case 'c': plan.push_back(StepMode::CoinFlip); break;
      case ',': case ' ': break;
      default: throw InputError(std::string("plan characters are 0, 1 and c; got '") + ch + "'");
    }
  }
  return plan;
}

Outcome cmd_duplicate(const RunConfig& cfg) {
  if (!cfg.plan) throw InputError("--plan is required");
  auto plan = parse_plan(*cfg.plan);
  long long cost = 0;
  for (StepMode m : plan) cost += m == StepMode::BothOne ? 2 : (m == StepMode::CoinFlip ? 1 : 0);
  const long long ell = cfg.ell.value_or(cost);
  const long long trials = cfg.trials.value_or(1);
  Outcome o;
  o.report["command"] = "duplicate-sim";
  o.report["steps"] = plan.size();
  o.report["ell"] = ell;
  o.report["seed"] = cfg.seed;
  DuplicateTrace trace = simulate(plan, ell, cfg.seed);
  o.report["sum_x"] = trace.sum_x();
  o.report["sum_y"] = trace.sum_y();
  o.report["difference"] = trace.difference();
  std::string xs, ys;
  for (const auto& s : trace.steps) {
    xs += static_cast<char>('0' + s.x);
    ys += static_cast<char>('0' + s.y);
  }
  o.report["x"] = xs;
  o.report["y"] = ys;
  auto violations = trace_violations(trace);
  o.report["valid"] = violations.empty();
  if (cfg.a) {
    const Rational a = parse_rational(*cfg.a);
    const double ad = boost::rational_cast<double>(a);
    const double freq = empirical_tail(plan, ell, ad, trials, cfg.seed);
    o.report["a"] = to_string(a);
    o.report["trials"] = trials;
    o.report["empirical_tail"] = freq;
    if (ell >= 1 && a > 0) {
      const double bound = tail_bound(a, ell);
      o.report["tail_bound"] = bound;
      o.report["within_bound"] = freq <= bound + 3.0 * std::sqrt(freq * (1 - freq) / static_cast<double>(trials)) + 1e-12;
    }
  }
  o.code = violations.empty() ? kExitOk : kExitViolation;
  return o;
}

Outcome cmd_check_regularity(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  VertexSet u = checked(g, set_req(cfg, "U"), "U");
  VertexSet w = checked(g, set_req(cfg, "W"), "W");
  const Rational eps = need(cfg.eps, "eps");
  const bool exact = !cfg.samples && u.size() <= kExactRegularityLimit && w.size() <= kExactRegularityLimit;
  RegularityMode mode = exact ? RegularityMode::exhaustive()
                              : RegularityMode::sampled(static_cast<int>(cfg.samples.value_or(200)), cfg.seed);
  std::optional<Rational> super;
  if (cfg.gamma) super = parse_rational(*cfg.gamma);
  RegularityVerdict v = check_regularity(g, u, w, eps, mode, super);
  Outcome o;
  o.report["command"] = "check-regularity";
  o.report["status"] = to_string(v.status);
  o.report["density"] = to_string(v.density);
  o.report["subpairs_examined"] = v.subpairs_examined;
  if (v.witness) {
    Report wt;
    wt["u"] = ids(v.witness->first);
    wt["w"] = ids(v.witness->second);
    wt["density"] = to_string(*v.witness_density);
    o.report["witness"] = wt;
  }
  if (v.super_regular) o.report["super_regular"] = *v.super_regular;
  const bool bad = v.status == RegularityStatus::IrregularWitness || (v.super_regular && !*v.super_regular);
  o.code = bad ? kExitViolation : kExitOk;
  return o;
}

Outcome cmd_check_avoiding(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  const long long k = need(cfg.k, "k");
  const Rational gamma = need(cfg.gamma, "gamma");
  auto spots = load_spots(cfg, g, floor_of(gamma * Rational(k)), gamma);
  std::vector<Vertex> all;
  for (const auto& s : spots) {
    auto vs = s.vertices();
    all.insert(all.end(), vs.begin(), vs.end());
  }
  VertexSet e = checked(g, set_opt(cfg, "E").value_or(VertexSet::from(all)), "E");
  AvoidingMode mode = cfg.trials ? AvoidingMode::adversarial(static_cast<int>(*cfg.trials), cfg.seed)
                                 : AvoidingMode::exhaustive();
  AvoidingVerdict v = check_avoiding(g, spots, e, need(cfg.lambda, "lambda"), need(cfg.eps, "eps"), gamma, k, mode);
  Outcome o;
  o.report["command"] = "check-avoiding";
  o.report["avoiding"] = v.avoiding;
  o.report["exhaustive"] = v.exhaustive;
  o.report["sets_examined"] = v.sets_examined;
  if (!v.avoiding) {
    o.report["violating_u"] = ids(v.violating_u);
    o.report["bad"] = ids(v.bad);
  }
  o.code = v.avoiding ? kExitOk : kExitViolation;
  return o;
}

Outcome cmd_find_spot(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  const long long m = need(cfg.m, "m");
  const Rational gamma = need(cfg.gamma, "gamma");
  SearchBudget budget;
  budget.seed = cfg.seed;
  if (cfg.trials) budget.bipartition_trials = static_cast<int>(*cfg.trials);
  if (cfg.n) budget.exact_n_bound = static_cast<int>(*cfg.n);
  NowhereDenseVerdict v = check_nowhere_dense(g, m, gamma, budget);
  Outcome o;
  o.report["command"] = "find-spot";
  o.report["status"] = to_string(v.status);
  if (v.witness) {
    Report s;
    s["u"] = ids(v.witness->u_side);
    s["w"] = ids(v.witness->w_side);
    s["edges"] = v.witness->edges.size();
    s["density"] = to_string(v.witness->density());
    o.report["spot"] = s;
  }
  return o;
}

Outcome cmd_verify_conjecture(const RunConfig& cfg) {
  const int n_max = static_cast<int>(need(cfg.n_max, "n-max"));
  ConjectureReport r = verify_conjecture_range(n_max);
  Outcome o;
  o.report["command"] = "verify-conjecture";
  o.report["n_max"] = r.n_max;
  o.report["graphs_per_n"] = r.graphs_per_n;
  o.report["graphs_swept"] = r.graphs_swept;
  o.report["instances_checked"] = r.instances_checked;
  o.report["instances_skipped"] = r.instances_skipped;
  o.report["embeddings_checked"] = r.embeddings_checked;
  Report ce = Report::array();
  for (const auto& c : r.counterexamples) {
    Report item;
    item["k"] = c.k;
    item["graph"] = serialize_graph(c.graph);
    item["tree"] = serialize_tree(c.tree);
    ce.push_back(item);
  }
  o.report["counterexamples"] = ce;
  o.report["verified"] = r.verified();
  o.code = r.verified() ? kExitOk : kExitViolation;
  return o;
}

Outcome cmd_validate_embedding(const RunConfig& cfg) {
  Graph g = load_graph(cfg);
  auto trees = load_trees(cfg);
  if (!cfg.embedding_path) throw InputError("--embedding is required");
  auto es = parse_embeddings(read_file(*cfg.embedding_path), trees);
  EmbeddingAudit audit = audit_forest(g, trees, es);
  Outcome o;
  o.report["command"] = "validate-embedding";
  o.report["embeddings"] = es.size();
  o.report["audit"] = audit_report(audit);
  o.code = audit.valid ? kExitOk : kExitViolation;
  return o;
}

/// Generators print the native file format instead of a report.
struct RawOutput {
  std::string text;
};

RawOutput cmd_gen_tree(const RunConfig& cfg) {
  return {serialize_tree(gen_random_tree(static_cast<int>(need(cfg.n, "n")), cfg.seed))};
}

RawOutput cmd_gen_lks(const RunConfig& cfg) {
  Graph g = gen_lks_graph(static_cast<int>(need(cfg.n, "n")), need(cfg.k, "k"), need(cfg.alpha, "alpha"), cfg.seed);
  return {serialize_graph(g)};
}

const std::map<std::string, std::function<Outcome(const RunConfig&)>>& report_commands() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table = {
      {"partition", cmd_partition},
      {"skeleton", cmd_skeleton},
      {"embed-greedy", cmd_embed_greedy},
      {"embed-regular", cmd_embed_regular},
      {"fill-pair", cmd_fill_pair},
      {"embed-avoiding", cmd_embed_avoiding},
      {"embed-expander", cmd_embed_expander},
      {"duplicate-sim", cmd_duplicate},
      {"check-regularity", cmd_check_regularity},
      {"check-avoiding", cmd_check_avoiding},
      {"find-spot", cmd_find_spot},
      {"verify-conjecture", cmd_verify_conjecture},
      {"validate-embedding", cmd_validate_embedding},
  };
  return table;
}

const std::map<std::string, std::function<RawOutput(const RunConfig&)>>& raw_commands() {
  static const std::map<std::string, std::function<RawOutput(const RunConfig&)>> table = {
      {"gen-tree", cmd_gen_tree},
      {"gen-lks", cmd_gen_lks},
  };
  return table;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + *cfg.out_path);
    f << text;
  } else {
    out << text;
  }
}

std::string format(const RunConfig& cfg, const Report& r) {
  return cfg.machine ? r.dump(2) + "\n" : render_text(r);
}

Report error_report(const RunConfig& cfg, const std::string& kind, const std::string& message) {
  Report r;
  r["command"] = cfg.subcommand;
  r["status"] = "violation";
  r["kind"] = kind;
  r["message"] = message;
  return r;
}

Report evidence_report(const FailureEvidence& ev) {
  Report r;
  r["stuck_tree_vertex"] = ev.stuck_tree_vertex;
  r["host_anchor"] = ev.host_anchor;
  for (const auto& [k, v] : ev.counts) r[k] = v;
  return r;
}

}  // namespace

std::string usage_text() {
  return "usage: lks <subcommand> [options]\n"
         "subcommands:\n"
         "  partition           --tree F --ell N\n"
         "  skeleton            --tree F --ell N\n"
         "  embed-greedy        --graph F --tree F --set A=.. --set B=.. [--k N]\n"
         "  embed-regular       --graph F --tree F --set C=.. --set D=.. [--set X=.. --set Y=.. --set Xstar=..]\n"
         "                      --eps P/Q --beta P/Q [--relaxed]\n"
         "  fill-pair           --graph F --tree F... --set C=.. --set D=.. [--set U=.. --set Xstar=..]\n"
         "                      --eps P/Q --beta P/Q [--relaxed]\n"
         "  embed-avoiding      --graph F --tree F... --spot U:W... [--set E=.. --set U=.. --set Ustar=..]\n"
         "                      --lambda P/Q --eps P/Q --gamma P/Q --k N [--relaxed]\n"
         "  embed-expander      --graph F --tree F --set V2=.. --set V3=.. [--set U=.. --set Ustar=.. --set P=..]\n"
         "                      --delta P/Q --gamma P/Q --k N [--retries N] [--check-expander] [--relaxed]\n"
         "  duplicate-sim       --plan STRING over {0,1,c} [--ell N] [--a P/Q --trials N]\n"
         "  check-regularity    --graph F --set U=.. --set W=.. --eps P/Q [--gamma P/Q] [--samples N]\n"
         "  check-avoiding      --graph F --spot U:W... --lambda P/Q --eps P/Q --gamma P/Q --k N [--trials N]\n"
         "  find-spot           --graph F --m N --gamma P/Q [--n EXACT_BOUND] [--trials N]\n"
         "  verify-conjecture   --n-max N\n"
         "  validate-embedding  --graph F --tree F... --embedding F\n"
         "  gen-tree            --n N\n"
         "  gen-lks             --n N --k N --alpha P/Q\n"
         "common options: --seed N (default 0), --out PATH, --machine, --verbose, --embedding PATH\n"
         "exit codes: 0 success, 1 property violation, 2 input error\n";
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto rep = report_commands().find(cfg.subcommand);
  auto raw = raw_commands().find(cfg.subcommand);
  if (rep == report_commands().end() && raw == raw_commands().end()) {
    err << "unknown subcommand '" << cfg.subcommand << "'\n" << usage_text();
    return kExitInput;
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    if (raw != raw_commands().end()) {
      emit(cfg, out, raw->second(cfg).text);
      return kExitOk;
    }
    Outcome o = rep->second(cfg);
    if (cfg.verbose) {
      o.report["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    emit(cfg, out, format(cfg, o.report));
    return o.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what();
    if (e.vertex()) err << " (vertex " << *e.vertex() << ")";
    err << '\n';
    return kExitInput;
  } catch (const EmbedFailure& e) {
    Report r = error_report(cfg, "embed-failure", e.what());
    r["evidence"] = evidence_report(e.evidence());
    emit(cfg, out, format(cfg, r));
    return kExitViolation;
  } catch (const AvoidancePropertyViolation& e) {
    Report r = error_report(cfg, "avoidance-violation", e.what());
    r["bad"] = e.bad_vertices();
    emit(cfg, out, format(cfg, r));
    return kExitViolation;
  } catch (const NowhereDensePropertyViolation& e) {
    Report r = error_report(cfg, "nowhere-dense-violation", e.what());
    r["shadow_size"] = e.shadow_size();
    emit(cfg, out, format(cfg, r));
    return kExitViolation;
  } catch (const StochasticFailure& e) {
    Report r = error_report(cfg, "stochastic-failure", e.what());
    r["excess"] = e.excess();
    emit(cfg, out, format(cfg, r));
    return kExitViolation;
  } catch (const ContractViolation& e) {
    err << "internal contract violated: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree-embedding toolkit for dense host graphs", "lks"};
  app.set_help_flag("-h,--help", "Print this help message");
  RunConfig cfg;
  std::vector<std::string> raw_sets;
  std::string graph, embedding, outp;
  app.add_option("subcommand", cfg.subcommand, "Subcommand to run")->required();
  app.add_option("--graph", graph, "Host graph file");
  app.add_option("--tree", cfg.tree_paths, "Tree file (repeatable)")->take_first()->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--embedding", embedding, "Embedding file (input for validate-embedding, output otherwise)");
  app.add_option("--out", outp, "Write the report here instead of stdout");
  app.add_option("--seed", cfg.seed, "PRNG seed (default 0)");
  auto opt_ll = [&](const char* name, std::optional<long long>& slot, const char* help) {
    app.add_option_function<long long>(name, [&slot](const long long& v) { slot = v; }, help);
  };
  opt_ll("--ell", cfg.ell, "Fine-partition parameter / Duplicate budget");
  opt_ll("--k", cfg.k, "Tree order parameter k");
  opt_ll("--n", cfg.n, "Vertex count");
  opt_ll("--n-max", cfg.n_max, "Largest graph order for verify-conjecture");
  opt_ll("--m", cfg.m, "Minimum-degree parameter of a dense spot");
  opt_ll("--trials", cfg.trials, "Monte Carlo trials");
  opt_ll("--samples", cfg.samples, "Sampled regularity subpairs");
  app.add_option("--retries", cfg.retries, "Resampling attempts for randomized embedders (default 16)");
  auto opt_rat = [&](const char* name, std::optional<std::string>& slot, const char* help) {
    app.add_option_function<std::string>(name, [&slot](const std::string& v) { slot = v; }, help);
  };
  opt_rat("--eps", cfg.eps, "epsilon as p/q");
  opt_rat("--gamma", cfg.gamma, "gamma as p/q");
  opt_rat("--beta", cfg.beta, "beta as p/q");
  opt_rat("--delta", cfg.delta, "delta as p/q");
  opt_rat("--tau", cfg.tau, "tau as p/q");
  opt_rat("--alpha", cfg.alpha, "alpha as p/q");
  opt_rat("--lambda", cfg.lambda, "Lambda as p/q");
  opt_rat("--a", cfg.a, "Deviation threshold as p/q");
  app.add_option_function<std::string>("--plan", [&](const std::string& v) { cfg.plan = v; }, "Duplicate plan over {0,1,c}");
  app.add_option("--set", raw_sets, "NAME=id,id,... (repeatable)")->take_first()->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--spot", cfg.spots, "Dense spot U-ids:W-ids (repeatable)")->take_first()->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--machine", cfg.machine, "Emit JSON instead of key: value text");
  app.add_flag("--verbose", cfg.verbose, "Add timing to the report");
  app.add_flag("--relaxed", cfg.relaxed, "Check only the structural hypotheses of embedders");
  app.add_flag("--check-expander", cfg.check_expander, "Search the host for dense spots before embed-expander");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << '\n' << usage_text();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "command line: " << e.what() << '\n' << usage_text();
    return kExitInput;
  } catch (const std::exception& e) {
    err << "command line: " << e.what() << '\n' << usage_text();
    return kExitInput;
  }
  if (!graph.empty()) cfg.graph_path = graph;
  if (!embedding.empty()) cfg.embedding_path = embedding;
  if (!outp.empty()) cfg.out_path = outp;
  for (const auto& s : raw_sets) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "command line: --set expects NAME=ids, got '" << s << "'\n";
      return kExitInput;
    }
    cfg.sets[s.substr(0, eq)].push_back(s.substr(eq + 1));
  }
  return dispatch(cfg, out, err);
}

}  // namespace lks
