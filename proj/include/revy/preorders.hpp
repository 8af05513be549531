#ifndef REVY_PREORDERS_HPP
#define REVY_PREORDERS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "revy/lts.hpp"
#include "revy/traces.hpp"

namespace revy {

// Bounded set of observable traces in canonical-key form. `complete` is
// false when exploration was cut off by the depth bound.
struct TraceSet {
  int depth = 0;
  std::set<ObsTrace> traces;
  bool complete = true;
};

// A tree refusal (t; V; W): after trace t the system can avoid rolling
// back over V and avoid performing W. Key-permutation closure is
// represented by keeping all traces canonical.
struct Refusal {
  ObsTrace t;
  std::set<ObsTrace> V;
  std::set<ObsTrace> W;

  // eps in V, V prefix-closed, eps not in W, W subset of V.
  void validate() const;

  std::string str() const;

  friend bool operator<(const Refusal& a, const Refusal& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.V != b.V) return a.V < b.V;
    return a.W < b.W;
  }
  friend bool operator==(const Refusal& a, const Refusal& b) {
    return a.t == b.t && a.V == b.V && a.W == b.W;
  }
};

struct MemberResult {
  bool value = false;
  bool conclusive = true;  // false when truncation could flip the verdict
};

enum class VerdictStatus { holds, fails, inconclusive };

std::string verdict_status_name(VerdictStatus s);

struct SafetyVerdict {
  VerdictStatus status;
  std::optional<ObsTrace> witness;  // trace of m missing from n
};

struct LivenessVerdict {
  VerdictStatus status;
  std::optional<Refusal> witness;  // refusal of m missing from n
  std::size_t membership_tests = 0;
  bool budget_exhausted = false;
};

// Observable traces of forward LTS runs of at most `depth` transitions.
TraceSet trace_set(const Configuration& c, int depth,
                   std::size_t state_cap = 200000);

// Observable traces of forward runs reaching an active rollback of a key
// that was already in c's history.
TraceSet roll_set(const Configuration& c, int depth,
                  std::size_t state_cap = 200000);

// Trace inclusion between initial systems: holds iff every bounded trace
// of m is a trace of n (both explorations complete).
SafetyVerdict safety_leq(const SysPtr& m, const SysPtr& n, int depth,
                         std::size_t state_cap = 200000);

// Whether the refusal is realized by some run of the initial system m:
// a run with observable part t reaching a state whose bounded rollback
// traces avoid V and whose bounded traces avoid W.
MemberResult refusal_member(const SysPtr& m, const Refusal& r, int depth,
                            std::size_t state_cap = 200000);

// Searches a finite refusal universe for a witness in Ref(m) \ Ref(n).
// The default universe ranges t over the bounded traces of m, V over
// prefix-closed subsets of the union of post-t trace sets, and W over
// subsets of V. Candidates are tested in lexicographic order, so a
// reported witness is the least one.
LivenessVerdict liveness_leq_refusal(
    const SysPtr& m, const SysPtr& n, int depth,
    std::size_t membership_budget = 100000, std::size_t state_cap = 200000,
    const std::optional<std::vector<Refusal>>& universe = std::nullopt);

// The reachable state with the shortest history (forward and backward
// reachability, unbounded depth). Recursive terms run into the state cap.
Configuration earliest_state(const Configuration& c,
                             std::size_t state_cap = 200000);

}  // namespace revy

#endif
