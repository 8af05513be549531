#ifndef REVY_TESTING_HPP
#define REVY_TESTING_HPP

#include <string>
#include <vector>

#include "revy/preorders.hpp"

namespace revy {

enum class TestStatus { pass, fail, inconclusive };

std::string test_status_name(TestStatus s);

struct TestVerdict {
  TestStatus status = TestStatus::inconclusive;
  // For a failed should-test: a reachable state from which success is
  // unreachable, plus the run that reaches it from the root.
  std::string witness_state;
  std::vector<std::string> witness_run;
  std::size_t states = 0;
  bool truncated = false;
};

// The initial configuration of the system composed with a test process.
Configuration compose(const SysPtr& m, const ProcPtr& test);

// Success is reachable: some state of the bounded reduction graph has an
// enabled success action. Forward reductions alone suffice for reachability
// from an initial configuration.
TestVerdict may_pass(const SysPtr& m, const ProcPtr& test, int depth,
                     std::size_t state_cap = 200000);

// Success stays reachable: on the full graph (with rollback edges), every
// reachable state can still reach a success-enabled state.
TestVerdict shd_pass(const SysPtr& m, const ProcPtr& test, int depth,
                     std::size_t state_cap = 200000);

// The sequential test exercising one observable trace: complement every
// action and finish with success.
ProcPtr gen_safety_test(const ObsTrace& t);

// The characteristic test of a tree refusal: success-guarded complement
// down t, then a committed choice over V and W in parallel with a
// rollback of the committing step.
ProcPtr gen_liveness_test(const Refusal& r);

}  // namespace revy

#endif
