#ifndef REVY_CANONICAL_HPP
#define REVY_CANONICAL_HPP

#include <string>
#include <variant>
#include <vector>

#include "revy/term.hpp"

namespace revy {

// After keys are distributed over parallel and restrictions hoisted, each
// parallel component is a named atom or a memory.
struct NamedAtom {
  Key key;
  ProcPtr proc;  // sum, recursion, rollback or process variable
};
struct MemoryAtom {
  Key content_key;
  ProcPtr content;
  Key key;
};
using Component = std::variant<NamedAtom, MemoryAtom>;

// Flat view of a canonical system: top-level restrictions plus a list of
// parallel components.
struct FlatSystem {
  std::vector<std::string> binders;
  std::vector<Component> comps;
};

// Exact restricted-name minimization enumerates binder assignments; systems
// with more top-level binders than this are rejected with capacity_error.
inline constexpr std::size_t max_canonical_binders = 8;

// Canonical representative of the structural-equivalence class:
// canonicalize(a) prints equal to canonicalize(b) exactly when a and b are
// structurally equivalent. Keys are never renamed.
SysPtr canonicalize(const SysPtr& s);

// Serialized canonical form, usable as a map key.
std::string canonical_repr(const SysPtr& s);

// Equality up to full structural equivalence.
bool structurally_equal(const SysPtr& a, const SysPtr& b);

// Equality up to the limited structural equivalence: only key distribution
// over parallel and hoisting of restrictions out of named processes, with
// no reordering of parallel components.
bool limited_eq(const SysPtr& a, const SysPtr& b);

// Flatten a system into binders and components. The input is
// canonicalized first.
FlatSystem decompose(const SysPtr& s);

// Flatten without normalizing; the system must already be in canonical
// shape (a restriction chain over parallel atoms).
FlatSystem decompose_canonical(const SysPtr& s);

// Inverse of decompose (right-nested parallel under the binder chain).
SysPtr recompose(const FlatSystem& flat);

// A system is in initial form when every named process carries the
// initial key and no memories are present.
bool initial_form(const SysPtr& s);

}  // namespace revy

#endif
