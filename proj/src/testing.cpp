#include "revy/testing.hpp"

#include <algorithm>
#include <deque>

#include "revy/printer.hpp"

namespace revy {

namespace {

void require_initial(const SysPtr& m) {
  if (!initial_form(m))
    throw std::invalid_argument("tested system must be initial");
}

StateGraph reduction_graph(const Configuration& root, int depth, bool backward,
                           std::size_t state_cap) {
  GraphOptions opt;
  opt.depth = depth;
  opt.include_backward = backward;
  opt.reduction_mode = true;
  opt.state_cap = state_cap;
  return build_graph(root, opt);
}

// States that can reach a success-enabled state along any edges.
std::vector<bool> can_reach_success(const StateGraph& g) {
  std::vector<std::vector<std::size_t>> rev(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& e : g.forward[i]) rev[e.to].push_back(i);
    for (const auto& e : g.backward[i]) rev[e.to].push_back(i);
  }
  std::vector<bool> good(g.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (omega_barb(g.states[i])) {
      good[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    for (std::size_t from : rev[id]) {
      if (!good[from]) {
        good[from] = true;
        queue.push_back(from);
      }
    }
  }
  return good;
}

// Shortest run from the root to `target`, as printable step records.
std::vector<std::string> run_to(const StateGraph& g, std::size_t target) {
  std::vector<std::size_t> parent(g.size(), SIZE_MAX);
  std::vector<std::string> step(g.size());
  std::deque<std::size_t> queue{g.root};
  std::vector<bool> seen(g.size(), false);
  seen[g.root] = true;
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    if (id == target) break;
    for (const auto& e : g.forward[id]) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        parent[e.to] = id;
        step[e.to] = print_label(e.label);
        queue.push_back(e.to);
      }
    }
    for (const auto& e : g.backward[id]) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        parent[e.to] = id;
        step[e.to] = "roll " + print_key(e.key);
        queue.push_back(e.to);
      }
    }
  }
  std::vector<std::string> run;
  for (std::size_t id = target; id != g.root && id != SIZE_MAX; id = parent[id])
    run.push_back(step[id] + " -> " + g.reprs[id]);
  std::reverse(run.begin(), run.end());
  return run;
}

ProcPtr omega_proc() {
  return make_proc(
      Process{SumP{{Summand{visible(omega_name), std::nullopt, nil_proc()}}}});
}

// 'a1.'a2...'an.tail
ProcPtr complement_chain(const ObsTrace& t, ProcPtr tail) {
  ProcPtr p = std::move(tail);
  for (auto it = t.rbegin(); it != t.rend(); ++it)
    p = make_proc(
        Process{SumP{{Summand{it->complement(), std::nullopt, std::move(p)}}}});
  return p;
}

}  // namespace

std::string test_status_name(TestStatus s) {
  switch (s) {
    case TestStatus::pass:
      return "pass";
    case TestStatus::fail:
      return "fail";
    case TestStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Configuration compose(const SysPtr& m, const ProcPtr& test) {
  require_initial(m);
  SysPtr sys = make_sys(
      System{ParS{m, make_sys(System{NamedS{eps_key, test}})}});
  return Configuration{DepHistory{}, sys};
}

TestVerdict may_pass(const SysPtr& m, const ProcPtr& test, int depth,
                     std::size_t state_cap) {
  StateGraph g = reduction_graph(compose(m, test), depth, false, state_cap);
  TestVerdict v;
  v.states = g.size();
  v.truncated = g.truncated;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (omega_barb(g.states[i])) {
      v.status = TestStatus::pass;
      return v;
    }
  }
  v.status = g.truncated ? TestStatus::inconclusive : TestStatus::fail;
  return v;
}

TestVerdict shd_pass(const SysPtr& m, const ProcPtr& test, int depth,
                     std::size_t state_cap) {
  StateGraph g = reduction_graph(compose(m, test), depth, true, state_cap);
  TestVerdict v;
  v.states = g.size();
  v.truncated = g.truncated;

  std::vector<bool> good = can_reach_success(g);
  std::size_t worst = SIZE_MAX;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (good[i]) continue;
    if (worst == SIZE_MAX || g.reprs[i] < g.reprs[worst]) worst = i;
  }
  if (worst != SIZE_MAX) {
    v.status = TestStatus::fail;
    v.witness_state = g.reprs[worst];
    v.witness_run = run_to(g, worst);
    return v;
  }
  v.status = g.truncated ? TestStatus::inconclusive : TestStatus::pass;
  return v;
}

ProcPtr gen_safety_test(const ObsTrace& t) {
  return complement_chain(t, omega_proc());
}

ProcPtr gen_liveness_test(const Refusal& r) {
  r.validate();

  // The committed inner test: tau(g).((branches over V\W and W) | roll<g>).
  // Branches for nonempty traces of V\W end inert; branches for W end in
  // success. The empty trace of V\W contributes the inert branch itself.
  SumP branches;
  for (const ObsTrace& v : r.V) {
    if (r.W.count(v) || v.empty()) continue;
    ProcPtr chain = complement_chain(v, nil_proc());
    const auto& sum = std::get<SumP>(chain->node);
    branches.summands.push_back(sum.summands.front());
  }
  for (const ObsTrace& w : r.W) {
    ProcPtr chain = complement_chain(w, omega_proc());
    const auto& sum = std::get<SumP>(chain->node);
    branches.summands.push_back(sum.summands.front());
  }

  ProcPtr roll = make_proc(Process{RollP{"g", eps_key}});
  ProcPtr body = make_proc(
      Process{ParP{make_proc(Process{std::move(branches)}), roll}});
  ProcPtr committed =
      make_proc(Process{SumP{{Summand{tau_action(), std::string("g"), body}}}});

  // omega + tau.committed, then the success-guarded complement down t.
  ProcPtr core = make_proc(Process{
      SumP{{Summand{visible(omega_name), std::nullopt, nil_proc()},
            Summand{tau_action(), std::nullopt, committed}}}});

  ProcPtr out = core;
  for (auto it = r.t.rbegin(); it != r.t.rend(); ++it)
    out = make_proc(Process{
        SumP{{Summand{visible(omega_name), std::nullopt, nil_proc()},
              Summand{it->complement(), std::nullopt, out}}}});
  return out;
}

}  // namespace revy
