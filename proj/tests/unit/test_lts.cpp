#include <doctest.h>

#include <random>
#include <set>

#include "revy/generator.hpp"
#include "revy/lts.hpp"
#include "revy/parser.hpp"
#include "revy/printer.hpp"

using namespace revy;

namespace {

Configuration initial(const std::string& term) {
  return Configuration{DepHistory{}, parse_system(term)};
}

}  // namespace

TEST_CASE("base transition of a single prefix") {
  auto ts = lts_transitions(initial("eps: a.0"));
  REQUIRE(ts.size() == 1);
  CHECK(print_label(ts[0].first) == "a(1)");
  CHECK(config_repr(ts[0].second) ==
        config_repr(parse_configuration("1 |- 1: 0 | mem[eps: a.0; 1]")));

  CHECK(lts_transitions(initial("eps: 0")).empty());
}

TEST_CASE("parallel prefixes offer both visible moves and the sync") {
  auto ts = lts_transitions(initial("eps: a.0 | eps: 'a.0"));
  std::multiset<std::string> labels;
  for (auto& [l, succ] : ts) labels.insert(print_label(l));
  CHECK(labels == std::multiset<std::string>{"'a(1)", "a(1)", "tau(1)"});
}

TEST_CASE("restriction blocks visible labels but not the sync") {
  auto ts = lts_transitions(initial("eps: new a. (a.0 | 'a.0)"));
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].first.action.is_tau());

  // no transition of new a. a.b.0 mentions the bound channel
  for (auto& [l, succ] : lts_transitions(initial("eps: new a. a.b.0")))
    CHECK(l.action.is_tau());
}

TEST_CASE("internal transitions coincide with forward reductions") {
  std::mt19937 rng(31);
  GenOptions opt;
  for (int i = 0; i < 40; ++i) {
    Configuration c = canonical_state(
        Configuration{DepHistory{}, random_initial_system(rng, opt)});
    std::set<std::string> via_lts, via_reduction;
    for (auto& [l, succ] : lts_transitions(c))
      if (l.action.is_tau()) via_lts.insert(config_repr(canonical_state(succ)));
    for (const auto& s : forward_steps(c))
      via_reduction.insert(config_repr(canonical_state(s.successor)));
    CHECK(via_lts == via_reduction);
  }
}

TEST_CASE("label keys are fresh") {
  std::mt19937 rng(37);
  GenOptions opt;
  for (int i = 0; i < 25; ++i) {
    Configuration c{DepHistory{}, random_initial_system(rng, opt)};
    for (auto& [l, succ] : lts_transitions(c)) CHECK(!keys_of(c).count(l.key));
  }
}

TEST_CASE("graph of the branching example") {
  // the two length-2 runs end in the same state: both continuations are 0
  // and the memories record the whole consumed sum
  GraphOptions opt;
  opt.depth = 4;
  StateGraph g = build_graph(initial("eps: a.(b.0 + c.0)"), opt);
  CHECK(g.size() == 3);
  CHECK(g.edge_count() == 3);
  CHECK_FALSE(g.truncated);

  StateGraph g0 = build_graph(initial("eps: 0"),
                              GraphOptions{5, true, false, 1000});
  CHECK(g0.size() == 1);
  CHECK(g0.edge_count() == 0);
}

TEST_CASE("rollback edges close a cycle") {
  Configuration c =
      initial("eps: new a. (a.c.0 | a(g).roll<g> | 'a.0) | eps: 'c.omega");
  GraphOptions opt;
  opt.depth = 6;
  opt.include_backward = true;
  opt.reduction_mode = true;
  StateGraph g = build_graph(c, opt);

  bool cycle = false;
  for (std::size_t i = 0; i < g.size() && !cycle; ++i) {
    for (const auto& e : g.backward[i]) {
      // forward-reach the source from the rollback target
      std::set<std::size_t> seen{e.to};
      std::vector<std::size_t> stack{e.to};
      while (!stack.empty()) {
        std::size_t id = stack.back();
        stack.pop_back();
        if (id == i) {
          cycle = true;
          break;
        }
        for (const auto& f : g.forward[id])
          if (seen.insert(f.to).second) stack.push_back(f.to);
      }
    }
  }
  CHECK(cycle);
}

TEST_CASE("canonical states merge runs that differ only in keys") {
  Configuration v1 = parse_configuration("5 |- 5: 0 | mem[eps: a.0; 5]");
  Configuration v2 = parse_configuration("2 |- 2: 0 | mem[eps: a.0; 2]");
  CHECK(config_repr(canonical_state(v1)) == config_repr(canonical_state(v2)));

  Configuration c = canonical_state(initial("eps: a.b.0"));
  CHECK(config_repr(canonical_state(c)) == config_repr(c));

  // idempotent along runs
  for (auto& [l, succ] : lts_transitions(c)) {
    Configuration cs = canonical_state(succ);
    CHECK(config_repr(canonical_state(cs)) == config_repr(cs));
  }
}

TEST_CASE("dot export shape") {
  GraphOptions opt;
  opt.depth = 2;
  opt.include_backward = true;
  StateGraph g = build_graph(
      initial("eps: a(g).roll<g> | eps: 'a.0"), opt);
  std::string dot = dot_export(g);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("roll 1") != std::string::npos);
}

TEST_CASE("state cap raises a capacity error") {
  GraphOptions opt;
  opt.depth = 6;
  opt.state_cap = 2;
  CHECK_THROWS_AS(build_graph(initial("eps: a.0 | eps: 'a.b.0"), opt),
                  capacity_error);
}
