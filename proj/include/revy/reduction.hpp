#ifndef REVY_REDUCTION_HPP
#define REVY_REDUCTION_HPP

#include <set>
#include <string>
#include <vector>

#include "revy/canonical.hpp"
#include "revy/term.hpp"

namespace revy {

enum class RedexKind { sync, internal, rec_unfold };

std::string redex_kind_name(RedexKind k);

// One enabled forward reduction: the fresh key, what fired, and the
// canonical successor.
struct ForwardStep {
  Key key;
  RedexKind kind;
  std::string channel;                     // sync channel, empty otherwise
  std::vector<std::string> participants;   // consumed named processes, printed
  Configuration successor;
};

// One enabled rollback: undoing target_key also undoes every newer key.
struct BackwardStep {
  Key target_key;
  std::vector<Key> undone_keys;  // newest first, ends with target_key
  Configuration successor;
};

// Deterministic fresh-key policy: one above the largest history key.
Key next_fresh_key(const Configuration& c);

// All forward reductions of the configuration, enumerated over the
// canonical component multiset. Throws std::invalid_argument when the
// system mentions keys outside the history.
std::vector<ForwardStep> forward_steps(const Configuration& c);

// Same enumeration with a caller-chosen fresh key (the key must not occur
// in the configuration).
std::vector<ForwardStep> forward_steps_with_key(const Configuration& c, Key k);

// Broadcast undo of one key: k-processes vanish, k-memories reinstate
// their contents, everything else is untouched. Identity when k is absent.
// The result is canonical.
SysPtr rollback_one(const SysPtr& m, Key k);

// Undo target_key and every newer history key, newest first. The
// activeness of a rollback request is not checked here.
Configuration rollback_to(const Configuration& c, Key target_key);

// Rollbacks enabled by an active roll component whose target is in the
// history. At most one step per key.
std::vector<BackwardStep> backward_steps(const Configuration& c);

// Successors of all forward and backward steps, canonical.
std::vector<Configuration> all_steps(const Configuration& c);

// Key compatibility plus the rollback loop: peeling the history newest
// first, each key can be rolled back and then re-derived by a forward step.
bool well_formed(const Configuration& c);

// An enabled success summand at top level.
bool omega_barb(const Configuration& c);

// An active rollback component targeting one of the given keys.
bool rollback_barb(const Configuration& c, const std::set<Key>& ks);

// History untouched, system canonicalized.
Configuration canonical_config(const Configuration& c);

// Serialized form of a configuration after canonicalizing the system.
std::string config_repr(const Configuration& c);

}  // namespace revy

#endif
