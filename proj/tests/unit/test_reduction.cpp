#include <doctest.h>

#include <random>

#include "revy/generator.hpp"
#include "revy/parser.hpp"
#include "revy/printer.hpp"
#include "revy/reduction.hpp"

using namespace revy;

namespace {

Configuration initial(const std::string& term) {
  return Configuration{DepHistory{}, parse_system(term)};
}

}  // namespace

TEST_CASE("synchronisation produces two memories") {
  Configuration c = initial("eps: a.0 | eps: 'a.0");
  auto steps = forward_steps(c);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].kind == RedexKind::sync);
  CHECK(steps[0].channel == "a");
  CHECK(steps[0].key == 1);
  Configuration want = parse_configuration(
      "1 |- 1: 0 | 1: 0 | mem[eps: a.0; 1] | mem[eps: 'a.0; 1]");
  CHECK(config_repr(steps[0].successor) == config_repr(want));
}

TEST_CASE("no redex, no step") {
  CHECK(forward_steps(initial("eps: 0")).empty());
  CHECK(all_steps(initial("eps: 0")).empty());
}

TEST_CASE("an internal prefix produces one memory") {
  auto steps = forward_steps(initial("eps: tau.b.0"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].kind == RedexKind::internal);
  Configuration want =
      parse_configuration("1 |- 1: b.0 | mem[eps: tau.b.0; 1]");
  CHECK(config_repr(steps[0].successor) == config_repr(want));
}

TEST_CASE("composition with a test has exactly the synchronisation redex") {
  Configuration c = initial("eps: a.(b.0 + c.0) | eps: 'a.'b.omega");
  auto steps = forward_steps(c);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].kind == RedexKind::sync);
  CHECK(steps[0].channel == "a");
}

TEST_CASE("recursion unfolds with a fresh key") {
  auto steps = forward_steps(initial("eps: rec X(g). a.(b.X | roll<g>)"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].kind == RedexKind::rec_unfold);
  // the unfolded body replaces X by the whole recursion and g by the key
  std::string repr = config_repr(steps[0].successor);
  CHECK(repr.find("roll<1>") != std::string::npos);
  CHECK(repr.find("rec") != std::string::npos);
}

TEST_CASE("rollback broadcast") {
  SysPtr s = parse_configuration("1 |- 1: b.0 | mem[eps: a.b.0; 1]").system;
  CHECK(print_system(rollback_one(s, 1)) ==
        canonical_repr(parse_system("eps: a.b.0")));

  // identity when the key is absent
  CHECK(print_system(rollback_one(s, 9)) == canonical_repr(s));

  SysPtr pair = parse_configuration(
                    "1 |- 1: c.0 | 1: d.0 | mem[eps: a.c.0; 1] | mem[eps: 'a.d.0; 1]")
                    .system;
  CHECK(print_system(rollback_one(pair, 1)) ==
        canonical_repr(parse_system("eps: a.c.0 | eps: 'a.d.0")));
}

TEST_CASE("an active rollback undoes its key") {
  Configuration c = parse_configuration(
      "1 |- 1: roll<1> | 1: 0 | mem[eps: a(g).roll<g>; 1] | mem[eps: 'a.0; 1]");
  auto steps = backward_steps(c);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].target_key == 1);
  CHECK(steps[0].undone_keys == std::vector<Key>{1});
  CHECK(config_repr(steps[0].successor) ==
        config_repr(initial("eps: a(g).roll<g> | eps: 'a.0")));

  // a rollback guarded by a prefix is not active
  Configuration guarded = initial("eps: a(g).roll<g>");
  CHECK(backward_steps(guarded).empty());
}

TEST_CASE("rolling an older key undoes the newer ones first") {
  Configuration c = initial("eps: a(g).(c.0 | roll<g>) | eps: 'a.0 | eps: 'c.0");
  auto first = forward_steps(c);
  REQUIRE(first.size() == 1);
  Configuration after_a = first[0].successor;

  // find the c-sync among the successors
  Configuration after_ac;
  bool found = false;
  for (const auto& s : forward_steps(after_a)) {
    if (s.kind == RedexKind::sync && s.channel == "c") {
      after_ac = s.successor;
      found = true;
    }
  }
  REQUIRE(found);
  CHECK(after_ac.history.size() == 2);

  auto back = backward_steps(after_ac);
  REQUIRE(back.size() == 1);
  CHECK(back[0].target_key == 1);
  CHECK(back[0].undone_keys == std::vector<Key>{2, 1});
  CHECK(config_repr(back[0].successor) == config_repr(canonical_config(c)));
}

TEST_CASE("well-formedness") {
  CHECK(well_formed(initial("eps: a.0 | eps: 'a.b.0")));
  CHECK_FALSE(well_formed(parse_configuration("eps |- 7: 0")));
  CHECK_THROWS_AS(forward_steps(parse_configuration("eps |- 7: 0")),
                  std::invalid_argument);

  // preserved along every step
  Configuration c = initial("eps: a(g).roll<g> | eps: 'a.tau.0");
  for (const auto& s : forward_steps(c)) {
    CHECK(well_formed(s.successor));
    for (const Configuration& s2 : all_steps(s.successor))
      CHECK(well_formed(s2));
  }
}

TEST_CASE("success barb reads enabled summands") {
  CHECK(omega_barb(initial("eps: omega")));
  CHECK(omega_barb(initial("eps: omega + tau.0")));
  CHECK_FALSE(omega_barb(initial("eps: a.omega")));
  CHECK_FALSE(omega_barb(initial("eps: 'omega")));
}

TEST_CASE("rollback barb") {
  Configuration c = parse_configuration("1 |- 1: roll<1> | mem[eps: tau.rl<1>; 1]");
  CHECK(rollback_barb(c, {1}));
  CHECK_FALSE(rollback_barb(c, {2}));
  CHECK_FALSE(rollback_barb(initial("eps: a(g).roll<g>"), {1}));
}

TEST_CASE("fresh keys, history growth, determinism") {
  std::mt19937 rng(23);
  GenOptions opt;
  for (int i = 0; i < 40; ++i) {
    Configuration c{DepHistory{}, random_initial_system(rng, opt)};
    for (const auto& s : forward_steps(c)) {
      CHECK(!keys_of(c).count(s.key));
      CHECK(s.successor.history.size() == c.history.size() + 1);
      CHECK(s.successor.history.newest() == s.key);
      for (const auto& s2 : forward_steps(s.successor)) {
        CHECK(!keys_of(s.successor).count(s2.key));
        // one level deeper, backward steps remove a nonempty prefix
        for (const auto& b : backward_steps(s2.successor)) {
          CHECK(!b.undone_keys.empty());
          CHECK(b.successor.history.size() + b.undone_keys.size() ==
                s2.successor.history.size());
        }
      }
    }
  }
}
