#ifndef REVY_VERIFY_HPP
#define REVY_VERIFY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "revy/generator.hpp"

namespace revy {

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> samples;  // a few offending inputs
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool ok() const {
    for (const auto& p : properties)
      if (p.violations) return false;
    return true;
  }
  std::string format() const;
};

// Randomized law checks over generated terms. Every suite is deterministic
// in (n, seed).

// Rollback determinism, forward/rollback roundtrips, preservation of
// well-formedness, rollback traces inside traces, key preservation under
// canonicalization, and absence of rollbacks for roll-free terms.
SuiteReport verify_lemmas(int n, unsigned seed, const GenOptions& gen = {});

// Unzip/zip roundtrips of composed internal runs, trace typing of explored
// runs, key-permutation invariance, and realizability of zipped component
// traces.
SuiteReport verify_zip(int n, unsigned seed, const GenOptions& gen = {});

// Forward reachability equals full reachability from initial states, and
// everything reachable from an earliest state is forward-reachable.
SuiteReport verify_props(int n, unsigned seed, const GenOptions& gen = {});

}  // namespace revy

#endif
