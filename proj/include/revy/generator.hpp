#ifndef REVY_GENERATOR_HPP
#define REVY_GENERATOR_HPP

#include <random>

#include "revy/term.hpp"

namespace revy {

struct GenOptions {
  int max_prefixes = 6;
  bool allow_recursion = false;
  double roll_density = 0.3;       // chance of binding and using a key variable
  double restriction_prob = 0.12;  // chance of wrapping a subterm in new
  int alphabet = 4;                // channel names a, b, c, ...
  int max_restrictions = 3;
};

// Closed process with at most max_prefixes action prefixes.
ProcPtr random_process(std::mt19937& rng, const GenOptions& opt);

// Initial system over the generated process.
SysPtr random_initial_system(std::mt19937& rng, const GenOptions& opt);

// The same term with the polarity of every visible prefix flipped;
// composing a term with its mirror guarantees synchronisations.
ProcPtr mirror(const ProcPtr& p);

}  // namespace revy

#endif
