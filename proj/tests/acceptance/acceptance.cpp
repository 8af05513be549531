// Acceptance suite: reproduces the worked examples exactly and runs the
// randomized law suites at full size. One line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "revy/parser.hpp"
#include "revy/preorders.hpp"
#include "revy/printer.hpp"
#include "revy/testing.hpp"
#include "revy/verify.hpp"

using namespace revy;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& s) { notes.push_back(s); }

void criterion(int num, const std::string& what, const std::function<bool()>& run) {
  notes.clear();
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = run();
  } catch (const std::exception& e) {
    error = e.what();
  }
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << num << " (" << what
            << ")  [" << dt.count() << "s]\n";
  for (const std::string& n : notes) std::cout << "      " << n << "\n";
  if (!error.empty()) std::cout << "      error: " << error << "\n";
  if (!ok) ++failures;
}

SysPtr sys(const std::string& s) { return parse_system(s); }
ProcPtr proc(const std::string& s) { return parse_process(s); }

Configuration initial(const SysPtr& m) {
  return Configuration{DepHistory{}, m};
}

ObsTrace obs(std::initializer_list<const char*> actions) {
  ObsTrace out;
  for (const char* a : actions) {
    std::string s(a);
    if (s[0] == '\'')
      out.push_back(visible(s.substr(1), true));
    else
      out.push_back(visible(s));
  }
  return out;
}

const std::string M1 = "eps: a.(b.0 + c.0)";
const std::string M2 = "eps: a.b.0 + a.c.0";
const std::string M3 = "eps: a.(b.c.0 + b.d.0)";
const std::string M4 = "eps: a.b.c.0 + a.b.d.0";
const std::string M5 = "eps: a.(b(gb).roll<gb> + c.0)";
const std::string M6 = "eps: a(ga).(b.roll<ga> + c.0)";

// ---------------------------------------------------------------------------
// Brute-force oracle for refusal membership: exhaustive run enumeration with
// no state graph, no deduplication and no canonical renumbering. It shares
// only the single-step transition function with the checked implementation.

void oracle_runs(const Configuration& c, int depth, const Trace& acc,
                 std::vector<std::pair<Trace, Configuration>>& out) {
  out.emplace_back(acc, c);
  if (depth == 0) return;
  for (auto& [label, succ] : lts_transitions(c)) {
    Trace next = acc;
    next.push_back(label);
    oracle_runs(succ, depth - 1, next, out);
  }
}

bool oracle_refusal_member(const SysPtr& m, const Refusal& r, int depth) {
  std::vector<std::pair<Trace, Configuration>> runs;
  oracle_runs(initial(m), depth, {}, runs);
  for (auto& [labels, end] : runs) {
    if (obs_of(labels) != r.t) continue;

    std::set<Key> pre_keys = keys_of(end.history);
    std::vector<std::pair<Trace, Configuration>> sub;
    oracle_runs(end, depth, {}, sub);

    std::set<ObsTrace> tr, rl;
    for (auto& [ls, st] : sub) {
      tr.insert(obs_of(ls));
      if (rollback_barb(st, pre_keys)) rl.insert(obs_of(ls));
    }
    bool v_clear = true, w_clear = true;
    for (const ObsTrace& v : r.V)
      if (rl.count(v)) v_clear = false;
    for (const ObsTrace& w : r.W)
      if (tr.count(w)) w_clear = false;
    if (v_clear && w_clear) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

bool criterion1() {
  SysPtr m = sys("eps: new a. (a.c.0 | a.0 | 'a.0)");
  SysPtr n = sys("eps: new a. (a.c.0 | a(g).roll<g> | 'a.0)");
  ProcPtr t = proc("'c.omega");

  auto t0 = std::chrono::steady_clock::now();
  TestVerdict vm = shd_pass(m, t, 8);
  auto dm = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  t0 = std::chrono::steady_clock::now();
  TestVerdict vn = shd_pass(n, t, 8);
  auto dn = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);

  note("irreversible variant: " + test_status_name(vm.status) + ", reversible: " +
       test_status_name(vn.status));
  bool complete = !vm.truncated && !vn.truncated;
  bool timely = dm.count() < 1.0 && dn.count() < 1.0;
  return vm.status == TestStatus::fail && vn.status == TestStatus::pass &&
         complete && timely;
}

bool criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  struct Row {
    std::string system;
    std::string test;
    TestStatus want;
  };
  std::vector<Row> rows = {
      {M1, "omega + 'a.'b.omega", TestStatus::pass},
      {M2, "omega + 'a.'b.omega", TestStatus::fail},
      {M3, "omega + 'a.tau(g).(roll<g> | 'b.'d.omega)", TestStatus::pass},
      {M4, "omega + 'a.tau(g).(roll<g> | 'b.'d.omega)", TestStatus::fail},
      {M6, "omega + 'a.'b.0", TestStatus::pass},
      {M5, "omega + 'a.'b.0", TestStatus::fail},
  };
  bool ok = true;
  for (const Row& row : rows) {
    TestVerdict v = shd_pass(sys(row.system), proc(row.test), 10);
    bool match = v.status == row.want && !v.truncated;
    if (!match) ok = false;
    note(row.system + "  shd  " + row.test + "  ->  " +
         test_status_name(v.status) +
         (match ? "" : "  (expected " + test_status_name(row.want) + ")"));
  }
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  return ok && dt.count() < 5.0;
}

bool criterion3() {
  const int depth = 6;
  std::set<ObsTrace> expected_small = {obs({}), obs({"a"}), obs({"a", "b"}),
                                       obs({"a", "c"})};
  bool ok = true;
  for (const std::string& term : {M1, M2, M5, M6}) {
    TraceSet ts = trace_set(initial(sys(term)), depth);
    if (!(ts.complete && ts.traces == expected_small)) {
      ok = false;
      note("unexpected trace set for " + term);
    }
  }
  TraceSet t3 = trace_set(initial(sys(M3)), depth);
  TraceSet t4 = trace_set(initial(sys(M4)), depth);
  if (!(t3.complete && t4.complete && t3.traces == t4.traces)) {
    ok = false;
    note("trace sets of the two deep-branching terms differ");
  }

  std::vector<std::string> low = {M1, M2, M5, M6};
  std::vector<std::string> high = {M3, M4};
  for (const auto& a : low)
    for (const auto& b : low)
      if (safety_leq(sys(a), sys(b), depth).status != VerdictStatus::holds) {
        ok = false;
        note("inclusion unexpectedly fails: " + a + " in " + b);
      }
  for (const auto& a : high)
    for (const auto& b : high)
      if (safety_leq(sys(a), sys(b), depth).status != VerdictStatus::holds) {
        ok = false;
        note("inclusion unexpectedly fails: " + a + " in " + b);
      }
  for (const auto& a : low)
    for (const auto& b : high) {
      SafetyVerdict v1 = safety_leq(sys(a), sys(b), depth);
      SafetyVerdict v2 = safety_leq(sys(b), sys(a), depth);
      if (v1.status != VerdictStatus::fails || !v1.witness ||
          v2.status != VerdictStatus::fails || !v2.witness) {
        ok = false;
        note("divide not detected between " + a + " and " + b);
      } else {
        note("witnesses: " + print_obs_trace(*v1.witness) + " / " +
             print_obs_trace(*v2.witness));
      }
    }
  return ok;
}

bool criterion4() {
  const int depth = 6;
  Refusal r1{obs({"a"}), {obs({}), obs({"b"})}, {obs({"b"})}};
  Refusal r2{obs({"a"}), {obs({}), obs({"b"})}, {}};

  struct Case {
    std::string term;
    const Refusal& r;
    bool want;
  };
  std::vector<Case> cases = {{M2, r1, true},
                             {M1, r1, false},
                             {M5, r2, true},
                             {M6, r2, false}};
  bool ok = true;
  for (const Case& c : cases) {
    MemberResult mr = refusal_member(sys(c.term), c.r, depth);
    bool oracle = oracle_refusal_member(sys(c.term), c.r, depth);
    bool match = mr.value == c.want && mr.conclusive && oracle == c.want;
    if (!match) ok = false;
    note(c.r.str() + " in Ref(" + c.term + "): member=" +
         (mr.value ? "yes" : "no") + " oracle=" + (oracle ? "yes" : "no") +
         " expected=" + (c.want ? "yes" : "no"));
  }

  LivenessVerdict v1 = liveness_leq_refusal(sys(M2), sys(M1), depth);
  LivenessVerdict v2 = liveness_leq_refusal(sys(M5), sys(M6), depth);
  if (!(v1.status == VerdictStatus::fails && v1.witness &&
        v1.witness->str() == "(a; {eps, b}; {b})")) {
    ok = false;
    note("refusal-inclusion witness missing for the first pair");
  }
  if (!(v2.status == VerdictStatus::fails && v2.witness &&
        v2.witness->str() == "(a; {eps, b}; {})")) {
    ok = false;
    note("refusal-inclusion witness missing for the second pair");
  }
  return ok;
}

bool criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  GenOptions gen;
  gen.max_prefixes = 6;
  SuiteReport rep = verify_lemmas(300, 42, gen);
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  for (const auto& p : rep.properties)
    note(p.name + ": " + std::to_string(p.checked) + " checks, " +
         std::to_string(p.violations) + " violations");
  return rep.ok() && dt.count() < 60.0;
}

bool criterion6() {
  SuiteReport rep = verify_zip(200, 42);
  for (const auto& p : rep.properties)
    note(p.name + ": " + std::to_string(p.checked) + " checks, " +
         std::to_string(p.violations) + " violations");
  return rep.ok();
}

bool criterion7() {
  SuiteReport rep = verify_props(200, 42);
  for (const auto& p : rep.properties)
    note(p.name + ": " + std::to_string(p.checked) + " checks, " +
         std::to_string(p.violations) + " violations");
  return rep.ok();
}

bool criterion8() {
  const int depth = 6;
  std::vector<std::string> alphabet = {"a", "b", "c", "d"};

  // every trace of length <= 3 over the alphabet
  std::vector<ObsTrace> all_traces{{}};
  std::size_t start = 0;
  for (int len = 1; len <= 3; ++len) {
    std::size_t end = all_traces.size();
    for (std::size_t i = start; i < end; ++i)
      for (const std::string& a : alphabet) {
        ObsTrace t = all_traces[i];
        t.push_back(visible(a));
        all_traces.push_back(std::move(t));
      }
    start = end;
  }

  bool ok = true;
  std::size_t agreements = 0;
  for (const std::string& term : {M1, M2, M3, M4, M5, M6}) {
    SysPtr m = sys(term);
    TraceSet ts = trace_set(initial(m), depth);
    if (!ts.complete) {
      ok = false;
      note("trace set of " + term + " truncated");
      continue;
    }
    for (const ObsTrace& t : all_traces) {
      TestVerdict v = may_pass(m, gen_safety_test(t), depth + 2);
      bool in_set = ts.traces.count(t) != 0;
      bool passes = v.status == TestStatus::pass;
      if (passes != in_set) {
        ok = false;
        note("disagreement on " + term + " with trace " + print_obs_trace(t));
      } else {
        ++agreements;
      }
    }
  }
  note("may-test/trace-set agreements: " + std::to_string(agreements));

  Refusal r1{obs({"a"}), {obs({}), obs({"b"})}, {obs({"b"})}};
  Refusal r2{obs({"a"}), {obs({}), obs({"b"})}, {}};
  struct Pair {
    std::string term;
    const Refusal& r;
  };
  for (const Pair& p : {Pair{M2, r1}, Pair{M5, r2}}) {
    if (!refusal_member(sys(p.term), p.r, depth).value) {
      ok = false;
      note("expected membership missing for " + p.term);
      continue;
    }
    TestVerdict v = shd_pass(sys(p.term), gen_liveness_test(p.r), 10);
    if (v.status != TestStatus::fail) {
      ok = false;
      note("characteristic test not failed by " + p.term);
    } else {
      note(p.term + " fails its characteristic test as required");
    }
  }
  return ok;
}

}  // namespace

int main() {
  criterion(1, "deadlock vs rollback under the sequential test", criterion1);
  criterion(2, "liveness table of the six branching examples", criterion2);
  criterion(3, "bounded trace sets and trace-inclusion verdicts", criterion3);
  criterion(4, "refusal witnesses, cross-checked by the brute-force oracle",
            criterion4);
  criterion(5, "law suite over 300 random terms (seed 42)", criterion5);
  criterion(6, "zip/unzip suite over 200 random pairs (seed 42)", criterion6);
  criterion(7, "reachability properties over 200 random terms (seed 42)",
            criterion7);
  criterion(8, "generated tests agree with trace sets and refusals", criterion8);

  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
