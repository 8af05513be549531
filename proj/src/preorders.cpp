#include "revy/preorders.hpp"

#include <algorithm>
#include <map>

#include "revy/printer.hpp"

namespace revy {

namespace {

// Budget left at a node follows from its history length: every forward
// edge extends the history by exactly one key.
int budget_at(const StateGraph& g, std::size_t id, int depth) {
  return depth - static_cast<int>(g.states[id].history.size() -
                                  g.states[g.root].history.size());
}

std::set<ObsTrace> suffix_traces(const StateGraph& g, int depth) {
  // states ordered by history length descending so successors are ready
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.states[a].history.size() > g.states[b].history.size();
  });
  std::vector<std::set<ObsTrace>> memo(g.size());
  for (std::size_t id : order) {
    std::set<ObsTrace>& out = memo[id];
    out.insert(ObsTrace{});
    if (budget_at(g, id, depth) <= 0) continue;
    for (const auto& e : g.forward[id]) {
      for (const ObsTrace& t : memo[e.to]) {
        if (e.label.action.is_tau()) {
          out.insert(t);
        } else {
          ObsTrace ext{e.label.action};
          ext.insert(ext.end(), t.begin(), t.end());
          out.insert(std::move(ext));
        }
      }
    }
  }
  return memo[g.root];
}

std::set<ObsTrace> suffix_rolls(const StateGraph& g, int depth,
                                const std::set<Key>& barb_keys) {
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.states[a].history.size() > g.states[b].history.size();
  });
  std::vector<std::set<ObsTrace>> memo(g.size());
  for (std::size_t id : order) {
    std::set<ObsTrace>& out = memo[id];
    if (rollback_barb(g.states[id], barb_keys)) out.insert(ObsTrace{});
    if (budget_at(g, id, depth) <= 0) continue;
    for (const auto& e : g.forward[id]) {
      for (const ObsTrace& t : memo[e.to]) {
        if (e.label.action.is_tau()) {
          out.insert(t);
        } else {
          ObsTrace ext{e.label.action};
          ext.insert(ext.end(), t.begin(), t.end());
          out.insert(std::move(ext));
        }
      }
    }
  }
  return memo[g.root];
}

StateGraph forward_lts_graph(const Configuration& c, int depth,
                             std::size_t state_cap) {
  GraphOptions opt;
  opt.depth = depth;
  opt.include_backward = false;
  opt.reduction_mode = false;
  opt.state_cap = state_cap;
  return build_graph(c, opt);
}

void require_initial(const SysPtr& m, const char* who) {
  if (!initial_form(m))
    throw std::invalid_argument(std::string(who) + ": system is not initial");
}

// Summary of one post-t state: its bounded rollback traces and traces.
struct EndpointSets {
  std::set<ObsTrace> rolls;
  std::set<ObsTrace> traces;
  bool complete = true;
};

struct EndpointSearch {
  std::vector<EndpointSets> endpoints;
  bool enumeration_complete = true;
};

// All states reachable by runs whose observable part equals t, together
// with their bounded trace and rollback-trace sets.
EndpointSearch collect_endpoints(const SysPtr& m, const ObsTrace& t, int depth,
                                 std::size_t state_cap) {
  EndpointSearch res;
  Configuration root = canonical_state(Configuration{DepHistory{}, m});
  std::set<std::string> visited;
  std::set<std::string> recorded;

  struct Item {
    Configuration cfg;
    std::size_t consumed;
    int left;
  };
  std::vector<Item> stack{{root, 0, depth}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    std::string key = std::to_string(it.consumed) + "#" + config_repr(it.cfg);
    if (!visited.insert(key).second) continue;

    if (it.consumed == t.size()) {
      std::string repr = config_repr(it.cfg);
      if (recorded.insert(repr).second) {
        EndpointSets sets;
        TraceSet tr = trace_set(it.cfg, depth, state_cap);
        TraceSet rl = roll_set(it.cfg, depth, state_cap);
        sets.traces = std::move(tr.traces);
        sets.rolls = std::move(rl.traces);
        sets.complete = tr.complete && rl.complete;
        res.endpoints.push_back(std::move(sets));
      }
    }

    auto steps = lts_transitions(it.cfg);
    if (it.left == 0) {
      if (!steps.empty()) res.enumeration_complete = false;
      continue;
    }
    for (auto& [label, succ] : steps) {
      Configuration cs = canonical_state(succ);
      if (label.action.is_tau()) {
        stack.push_back(Item{std::move(cs), it.consumed, it.left - 1});
      } else if (it.consumed < t.size() && label.action == t[it.consumed]) {
        stack.push_back(Item{std::move(cs), it.consumed + 1, it.left - 1});
      }
    }
  }
  return res;
}

MemberResult member_from_endpoints(const EndpointSearch& es, const Refusal& r) {
  bool weak_witness = false;
  for (const EndpointSets& e : es.endpoints) {
    bool v_clear = true;
    for (const ObsTrace& v : r.V)
      if (e.rolls.count(v)) {
        v_clear = false;
        break;
      }
    if (!v_clear) continue;
    bool w_clear = true;
    for (const ObsTrace& w : r.W)
      if (e.traces.count(w)) {
        w_clear = false;
        break;
      }
    if (!w_clear) continue;
    if (e.complete) return MemberResult{true, true};
    weak_witness = true;
  }
  if (weak_witness) return MemberResult{true, false};
  return MemberResult{false, es.enumeration_complete};
}

}  // namespace

void Refusal::validate() const {
  if (!V.count(ObsTrace{}))
    throw std::invalid_argument("refusal: V must contain the empty trace");
  for (const ObsTrace& v : V)
    for (std::size_t len = 0; len < v.size(); ++len)
      if (!V.count(ObsTrace(v.begin(), v.begin() + len)))
        throw std::invalid_argument("refusal: V must be prefix-closed");
  if (W.count(ObsTrace{}))
    throw std::invalid_argument("refusal: W must not contain the empty trace");
  for (const ObsTrace& w : W)
    if (!V.count(w))
      throw std::invalid_argument("refusal: W must be a subset of V");
}

std::string Refusal::str() const {
  auto set_str = [](const std::set<ObsTrace>& s) {
    std::string out = "{";
    bool first = true;
    for (const ObsTrace& t : s) {
      if (!first) out += ", ";
      out += print_obs_trace(t);
      first = false;
    }
    return out + "}";
  };
  return "(" + print_obs_trace(t) + "; " + set_str(V) + "; " + set_str(W) + ")";
}

std::string verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::holds:
      return "holds";
    case VerdictStatus::fails:
      return "fails";
    case VerdictStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

TraceSet trace_set(const Configuration& c, int depth, std::size_t state_cap) {
  StateGraph g = forward_lts_graph(c, depth, state_cap);
  TraceSet out;
  out.depth = depth;
  out.traces = suffix_traces(g, depth);
  out.complete = !g.truncated;
  return out;
}

TraceSet roll_set(const Configuration& c, int depth, std::size_t state_cap) {
  StateGraph g = forward_lts_graph(c, depth, state_cap);
  // The barb targets the keys present before the runs: after canonical
  // renumbering these are exactly 1..n.
  std::set<Key> barb_keys;
  for (Key k = 1; k <= static_cast<Key>(c.history.size()); ++k)
    barb_keys.insert(k);
  TraceSet out;
  out.depth = depth;
  out.traces = suffix_rolls(g, depth, barb_keys);
  out.complete = !g.truncated;
  return out;
}

SafetyVerdict safety_leq(const SysPtr& m, const SysPtr& n, int depth,
                         std::size_t state_cap) {
  require_initial(m, "safety_leq");
  require_initial(n, "safety_leq");
  TraceSet tm = trace_set(Configuration{DepHistory{}, m}, depth, state_cap);
  TraceSet tn = trace_set(Configuration{DepHistory{}, n}, depth, state_cap);

  std::optional<ObsTrace> witness;
  for (const ObsTrace& t : tm.traces) {
    if (!tn.traces.count(t)) {
      witness = t;
      break;  // sets are ordered: first difference is the least witness
    }
  }
  if (witness) {
    if (tn.complete) return SafetyVerdict{VerdictStatus::fails, witness};
    return SafetyVerdict{VerdictStatus::inconclusive, witness};
  }
  if (tm.complete && tn.complete)
    return SafetyVerdict{VerdictStatus::holds, std::nullopt};
  return SafetyVerdict{VerdictStatus::inconclusive, std::nullopt};
}

MemberResult refusal_member(const SysPtr& m, const Refusal& r, int depth,
                            std::size_t state_cap) {
  require_initial(m, "refusal_member");
  r.validate();
  EndpointSearch es = collect_endpoints(m, r.t, depth, state_cap);
  return member_from_endpoints(es, r);
}

namespace {

// Prefix-closed subsets of `universe` containing the empty trace, in
// lexicographic order, sizes capped.
std::vector<std::set<ObsTrace>> prefix_closed_subsets(
    const std::set<ObsTrace>& universe, std::size_t max_size) {
  std::vector<ObsTrace> items(universe.begin(), universe.end());
  // keep the enumeration tractable
  const std::size_t max_items = 16;
  if (items.size() > max_items) items.resize(max_items);

  std::vector<std::set<ObsTrace>> out;
  std::size_t total = std::size_t{1} << items.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::set<ObsTrace> v;
    v.insert(ObsTrace{});
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask & (std::size_t{1} << i)) v.insert(items[i]);
    if (v.size() > max_size) continue;
    bool closed = true;
    for (const ObsTrace& t : v) {
      for (std::size_t len = 1; closed && len < t.size(); ++len)
        if (!v.count(ObsTrace(t.begin(), t.begin() + len))) closed = false;
      if (!closed) break;
    }
    if (closed) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::set<ObsTrace>> subsets_up_to(const std::set<ObsTrace>& base,
                                              std::size_t max_size) {
  std::vector<ObsTrace> items(base.begin(), base.end());
  const std::size_t max_items = 16;
  if (items.size() > max_items) items.resize(max_items);
  std::vector<std::set<ObsTrace>> out;
  std::size_t total = std::size_t{1} << items.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::set<ObsTrace> w;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (mask & (std::size_t{1} << i)) w.insert(items[i]);
    if (w.size() <= max_size) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LivenessVerdict liveness_leq_refusal(
    const SysPtr& m, const SysPtr& n, int depth, std::size_t membership_budget,
    std::size_t state_cap, const std::optional<std::vector<Refusal>>& universe) {
  require_initial(m, "liveness_leq_refusal");
  require_initial(n, "liveness_leq_refusal");

  LivenessVerdict verdict;
  verdict.status = VerdictStatus::holds;
  bool any_inconclusive = false;

  std::map<ObsTrace, EndpointSearch> cache_m, cache_n;
  auto endpoints_for = [&](std::map<ObsTrace, EndpointSearch>& cache,
                           const SysPtr& sys, const ObsTrace& t)
      -> const EndpointSearch& {
    auto it = cache.find(t);
    if (it == cache.end())
      it = cache.emplace(t, collect_endpoints(sys, t, depth, state_cap)).first;
    return it->second;
  };

  auto test_candidate = [&](const Refusal& r) -> bool {
    // returns true when the search should stop (witness or budget)
    if (verdict.membership_tests + 2 > membership_budget) {
      verdict.budget_exhausted = true;
      return true;
    }
    const EndpointSearch& em = endpoints_for(cache_m, m, r.t);
    MemberResult mm = member_from_endpoints(em, r);
    ++verdict.membership_tests;
    if (!mm.value) {
      if (!mm.conclusive) any_inconclusive = true;
      return false;
    }
    const EndpointSearch& en = endpoints_for(cache_n, n, r.t);
    MemberResult nn = member_from_endpoints(en, r);
    ++verdict.membership_tests;
    if (nn.value) return false;
    if (mm.conclusive && nn.conclusive) {
      verdict.status = VerdictStatus::fails;
      verdict.witness = r;
      return true;
    }
    any_inconclusive = true;
    return false;
  };

  if (universe) {
    std::vector<Refusal> sorted = *universe;
    for (const Refusal& r : sorted) r.validate();
    std::sort(sorted.begin(), sorted.end());
    for (const Refusal& r : sorted)
      if (test_candidate(r)) break;
  } else {
    TraceSet tm = trace_set(Configuration{DepHistory{}, m}, depth, state_cap);
    if (!tm.complete) any_inconclusive = true;
    for (const ObsTrace& t : tm.traces) {
      if (verdict.status == VerdictStatus::fails || verdict.budget_exhausted)
        break;
      const EndpointSearch& em = endpoints_for(cache_m, m, t);
      std::set<ObsTrace> u;
      for (const EndpointSets& e : em.endpoints)
        u.insert(e.traces.begin(), e.traces.end());
      u.erase(ObsTrace{});
      bool stop = false;
      for (const auto& v : prefix_closed_subsets(u, 8)) {
        std::set<ObsTrace> w_base = v;
        w_base.erase(ObsTrace{});
        for (const auto& w : subsets_up_to(w_base, 4)) {
          Refusal r{t, v, w};
          if (test_candidate(r)) {
            stop = true;
            break;
          }
        }
        if (stop) break;
      }
      if (stop) break;
    }
  }

  if (verdict.status != VerdictStatus::fails &&
      (any_inconclusive || verdict.budget_exhausted))
    verdict.status = VerdictStatus::inconclusive;
  return verdict;
}

Configuration earliest_state(const Configuration& c, std::size_t state_cap) {
  GraphOptions opt;
  opt.depth = -1;
  opt.include_backward = true;
  opt.reduction_mode = true;
  opt.state_cap = state_cap;
  StateGraph g = build_graph(c, opt);

  std::size_t best = g.root;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.states[i].history.size() < g.states[best].history.size() ||
        (g.states[i].history.size() == g.states[best].history.size() &&
         g.reprs[i] < g.reprs[best]))
      best = i;
  }
  return g.states[best];
}

}  // namespace revy
