#ifndef REVY_TRACES_HPP
#define REVY_TRACES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "revy/lts.hpp"
#include "revy/term.hpp"

namespace revy {

using Trace = std::vector<Label>;

// A trace as a history transformer: after = trace keys (newest first)
// prepended to before, all keys fresh for before.
struct TypedTrace {
  DepHistory before;
  Trace labels;
  DepHistory after;
};

// Observable trace with canonical positional keys: the keys are 1..n by
// first occurrence and therefore implicit.
using ObsTrace = std::vector<Action>;

std::string print_trace(const Trace& t);
std::string print_obs_trace(const ObsTrace& t);  // "eps" when empty

// Drop internal labels, keep order and keys.
Trace observable(const Trace& t);

// Flip the polarity of every visible label. Involution.
Trace complement(const Trace& t);
ObsTrace complement(const ObsTrace& t);

// Erase internal labels and keys.
ObsTrace obs_of(const Trace& t);

// Keys renamed positionally to 1..n by first occurrence. Requires a
// canonical trace (each key at most once).
Trace canonical_keys(const Trace& t);

// Trace typing: succeeds iff the keys of t are pairwise distinct and
// disjoint from d. The resulting after-history is unique.
std::optional<TypedTrace> try_type_trace(const DepHistory& d, const Trace& t);
TypedTrace type_trace(const DepHistory& d, const Trace& t);  // throws on failure

// All zips of two histories: order-preserving merges where a key present
// in both is emitted once, at aligned positions.
std::vector<DepHistory> zip_histories(const DepHistory& d1, const DepHistory& d2);

// All zipped typed traces over the given before-history. Complementary
// visible labels sharing a key fuse into internal labels.
std::vector<TypedTrace> zip_traces(const TypedTrace& t1, const TypedTrace& t2,
                                   const DepHistory& target_before);

// Decompose an all-internal run of a parallel composition into component
// typed traces with complementary observable parts. Throws when the run
// is not realizable by the pair.
std::vector<std::pair<TypedTrace, TypedTrace>> unzip_trace(
    const Configuration& left, const Configuration& right, const TypedTrace& run);

}  // namespace revy

#endif
