#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "revy/parser.hpp"
#include "revy/preorders.hpp"
#include "revy/printer.hpp"
#include "revy/testing.hpp"
#include "revy/generator.hpp"
#include "revy/verify.hpp"

using json = nlohmann::json;
using namespace revy;

namespace {

// exit codes: 0 ok/holds/pass, 1 fails, 2 capacity, 3 inconclusive
constexpr int exit_ok = 0;
constexpr int exit_fail = 1;
constexpr int exit_capacity = 2;
constexpr int exit_inconclusive = 3;

struct RunConfig {
  int depth = 6;
  std::size_t state_cap = 200000;
  std::size_t refusal_budget = 100000;
  unsigned seed = 42;
  std::string output = "text";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.pop_back();
  return text;
}

SysPtr load_system(const std::string& path) {
  return parse_system(slurp(path));
}

ProcPtr load_process(const std::string& path) {
  return parse_process(slurp(path));
}

json refusal_json(const Refusal& r) {
  auto set_json = [](const std::set<ObsTrace>& s) {
    json arr = json::array();
    for (const ObsTrace& t : s) arr.push_back(print_obs_trace(t));
    return arr;
  };
  return json{{"t", print_obs_trace(r.t)},
              {"V", set_json(r.V)},
              {"W", set_json(r.W)}};
}

json graph_json(const StateGraph& g) {
  json states = json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    states.push_back(json{{"id", i}, {"config", g.reprs[i]}});
  json fwd = json::array(), bwd = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& e : g.forward[i])
      fwd.push_back(json{{"from", i}, {"label", print_label(e.label)}, {"to", e.to}});
    for (const auto& e : g.backward[i])
      bwd.push_back(json{{"from", i}, {"key", e.key}, {"to", e.to}});
  }
  return json{{"root", g.root},       {"depth", g.depth},
              {"truncated", g.truncated}, {"states", states},
              {"forward_edges", fwd}, {"backward_edges", bwd}};
}

int cmd_fmt(const std::string& file) {
  std::string text = slurp(file);
  try {
    std::cout << print_system(parse_system(text)) << "\n";
    return exit_ok;
  } catch (const parse_error& primary) {
    try {
      std::cout << print_process(parse_process(text)) << "\n";
      return exit_ok;
    } catch (const parse_error&) {
    }
    try {
      std::cout << print_configuration(parse_configuration(text)) << "\n";
      return exit_ok;
    } catch (const parse_error&) {
    }
    std::cerr << "error: " << primary.what() << "\n";
    return exit_fail;
  }
}

int cmd_lts(const std::string& file, const RunConfig& cfg, bool backward,
            bool dot) {
  SysPtr m = load_system(file);
  GraphOptions opt;
  opt.depth = cfg.depth;
  opt.include_backward = backward;
  opt.state_cap = cfg.state_cap;
  StateGraph g = build_graph(Configuration{DepHistory{}, m}, opt);

  if (dot || cfg.output == "dot") {
    std::cout << dot_export(g);
  } else if (cfg.output == "json") {
    std::cout << graph_json(g).dump(2) << "\n";
  } else {
    std::cout << "states: " << g.size() << "\n";
    std::cout << "edges: " << g.edge_count() << "\n";
    std::cout << "truncated: " << (g.truncated ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::cout << "s" << i << (i == g.root ? " (root)" : "") << ": "
                << g.reprs[i] << "\n";
      for (const auto& e : g.forward[i])
        std::cout << "  --" << print_label(e.label) << "--> s" << e.to << "\n";
      for (const auto& e : g.backward[i])
        std::cout << "  --roll " << print_key(e.key) << "--> s" << e.to
                  << " (backward)\n";
    }
  }
  return exit_ok;
}

int verdict_exit(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::holds:
      return exit_ok;
    case VerdictStatus::fails:
      return exit_fail;
    case VerdictStatus::inconclusive:
      return exit_inconclusive;
  }
  return exit_inconclusive;
}

int cmd_check(const std::string& kind, const std::string& file_a,
              const std::string& file_b, const RunConfig& cfg) {
  SysPtr a = load_system(file_a);
  SysPtr b = load_system(file_b);

  if (kind == "safety") {
    // A is at most as safe as B when every bounded trace of B is one of A.
    SafetyVerdict v = safety_leq(b, a, cfg.depth, cfg.state_cap);
    if (cfg.output == "json") {
      json out{{"status", verdict_status_name(v.status)}};
      if (v.witness) out["witness"] = print_obs_trace(*v.witness);
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "safety " << verdict_status_name(v.status);
      if (v.witness) std::cout << "  witness trace: " << print_obs_trace(*v.witness);
      std::cout << "\n";
    }
    return verdict_exit(v.status);
  }

  // liveness: A refines B when every refusal of B is a refusal of A.
  LivenessVerdict v = liveness_leq_refusal(b, a, cfg.depth, cfg.refusal_budget,
                                           cfg.state_cap);
  if (cfg.output == "json") {
    json out{{"status", verdict_status_name(v.status)},
             {"membership_tests", v.membership_tests}};
    if (v.witness) out["witness"] = refusal_json(*v.witness);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "liveness " << verdict_status_name(v.status);
    if (v.witness) std::cout << "  witness refusal: " << v.witness->str();
    std::cout << "\n";
  }
  return verdict_exit(v.status);
}

int cmd_run_test(const std::string& file, const std::string& testfile,
                 const std::string& mode, const RunConfig& cfg) {
  SysPtr m = load_system(file);
  ProcPtr t = load_process(testfile);
  TestVerdict v = mode == "may" ? may_pass(m, t, cfg.depth, cfg.state_cap)
                                : shd_pass(m, t, cfg.depth, cfg.state_cap);
  if (cfg.output == "json") {
    json out{{"status", test_status_name(v.status)},
             {"states", v.states},
             {"truncated", v.truncated}};
    if (!v.witness_state.empty()) {
      out["witness_state"] = v.witness_state;
      out["witness_run"] = v.witness_run;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << mode << " " << test_status_name(v.status) << "  (" << v.states
              << " states" << (v.truncated ? ", truncated" : "") << ")\n";
    if (!v.witness_state.empty()) {
      std::cout << "stuck at: " << v.witness_state << "\n";
      for (const auto& step : v.witness_run) std::cout << "  " << step << "\n";
    }
  }
  switch (v.status) {
    case TestStatus::pass:
      return exit_ok;
    case TestStatus::fail:
      return exit_fail;
    case TestStatus::inconclusive:
      return exit_inconclusive;
  }
  return exit_inconclusive;
}

int cmd_verify(const std::string& suite, int n, const RunConfig& cfg,
               const GenOptions& gen) {
  SuiteReport rep;
  if (suite == "lemmas")
    rep = verify_lemmas(n, cfg.seed, gen);
  else if (suite == "zip")
    rep = verify_zip(n, cfg.seed, gen);
  else
    rep = verify_props(n, cfg.seed, gen);

  if (cfg.output == "json") {
    json props = json::array();
    for (const auto& p : rep.properties) {
      json samples = json::array();
      for (const auto& s : p.samples) samples.push_back(s);
      props.push_back(json{{"name", p.name},
                           {"checked", p.checked},
                           {"violations", p.violations},
                           {"counterexamples", samples}});
    }
    std::cout << json{{"suite", rep.suite}, {"ok", rep.ok()}, {"properties", props}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << rep.format();
  }
  return rep.ok() ? exit_ok : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for a reversible CCS with keyed rollback"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  if (const char* env = std::getenv("REVY_STATE_CAP"))
    cfg.state_cap = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));

  app.add_option("--depth", cfg.depth, "forward exploration depth");
  app.add_option("--state-cap", cfg.state_cap, "maximum number of states");
  app.add_option("--refusal-budget", cfg.refusal_budget,
                 "membership-test budget for liveness checks");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--output", cfg.output, "text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));

  std::string file, file_b, testfile, kind, mode = "shd", suite;
  bool backward = false, dot = false;
  int n = 300;

  auto* fmt = app.add_subcommand("fmt", "parse a term and print it normalized");
  fmt->add_option("file", file)->required();

  auto* lts = app.add_subcommand("lts", "explore the transition graph");
  lts->add_option("file", file)->required();
  lts->add_flag("--backward", backward, "add rollback edges");
  lts->add_flag("--dot", dot, "emit DOT");

  auto* check = app.add_subcommand("check", "decide a preorder between two terms");
  check->add_option("kind", kind)->required()->check(CLI::IsMember({"safety", "liveness"}));
  check->add_option("fileA", file)->required();
  check->add_option("fileB", file_b)->required();

  auto* run = app.add_subcommand("run-test", "execute a may- or should-test");
  run->add_option("file", file)->required();
  run->add_option("testfile", testfile)->required();
  run->add_option("--mode", mode)->check(CLI::IsMember({"may", "shd"}));

  GenOptions gen;
  auto* verify = app.add_subcommand("verify", "run a randomized property suite");
  verify->add_option("--suite", suite)
      ->required()
      ->check(CLI::IsMember({"lemmas", "zip", "props"}));
  verify->add_option("--n", n, "number of generated terms");
  verify->add_flag("--allow-recursion", gen.allow_recursion,
                   "admit recursive terms (explorations may truncate)");
  verify->add_option("--roll-density", gen.roll_density,
                     "probability of binding and using rollback keys");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fmt->parsed()) return cmd_fmt(file);
    if (lts->parsed()) return cmd_lts(file, cfg, backward, dot);
    if (check->parsed()) return cmd_check(kind, file, file_b, cfg);
    if (run->parsed()) return cmd_run_test(file, testfile, mode, cfg);
    if (verify->parsed()) return cmd_verify(suite, n, cfg, gen);
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return exit_capacity;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_ok;
}
