#ifndef REVY_TERM_HPP
#define REVY_TERM_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace revy {

// Keys identify reductions. Key 0 is the distinguished initial key "eps";
// it never counts as a real key.
using Key = std::uint32_t;
inline constexpr Key eps_key = 0;

// A communication action: a channel with a polarity, or the internal
// action tau (empty channel). 'a synchronises with a.
struct Action {
  std::string channel;  // empty means tau
  bool negative = false;

  bool is_tau() const { return channel.empty(); }

  Action complement() const {
    if (is_tau()) return *this;
    return Action{channel, !negative};
  }

  friend bool operator==(const Action& x, const Action& y) {
    return x.channel == y.channel && x.negative == y.negative;
  }
  friend bool operator!=(const Action& x, const Action& y) { return !(x == y); }
  friend bool operator<(const Action& x, const Action& y) {
    if (x.channel != y.channel) return x.channel < y.channel;
    return x.negative < y.negative;
  }
};

inline Action tau_action() { return Action{}; }
inline Action visible(std::string channel, bool negative = false) {
  return Action{std::move(channel), negative};
}

// The success channel used by tests. It may never be restricted.
inline const std::string omega_name = "omega";

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

// One guarded branch of a sum: prefix(binder).continuation. The optional
// binder is a key variable bound in the continuation.
struct Summand {
  Action prefix;
  std::optional<std::string> binder;
  ProcPtr continuation;
};

struct SumP {
  std::vector<Summand> summands;  // empty list is the inert process 0
};
struct ParP {
  ProcPtr left, right;
};
struct NewP {
  std::string name;
  ProcPtr body;
};
struct RecP {
  std::string var;                     // process variable bound in body
  std::optional<std::string> binder;   // key variable bound in body
  ProcPtr body;
};
struct VarP {
  std::string var;
};
// Rollback request. Source terms carry a key variable; execution
// substitutes it with the key of the reduction to undo.
struct RollP {
  std::string keyvar;  // nonempty when still a variable
  Key key = eps_key;

  bool is_var() const { return !keyvar.empty(); }
};

struct Process {
  std::variant<SumP, ParP, NewP, RecP, VarP, RollP> node;
};

inline ProcPtr make_proc(Process p) {
  return std::make_shared<const Process>(std::move(p));
}
inline ProcPtr nil_proc() { return make_proc(Process{SumP{}}); }

struct System;
using SysPtr = std::shared_ptr<const System>;

struct NilS {};
struct NewS {
  std::string name;
  SysPtr body;
};
struct ParS {
  SysPtr left, right;
};
// A process tagged with the key of the reduction that produced it.
struct NamedS {
  Key key;
  ProcPtr proc;
};
// A memory [content_key: content ; key]: the named process consumed by
// reduction `key`, kept so the reduction can be undone.
struct MemS {
  Key content_key;
  ProcPtr content;  // always a sum or a recursion
  Key key;
};

struct System {
  std::variant<NilS, NewS, ParS, NamedS, MemS> node;
};

inline SysPtr make_sys(System s) {
  return std::make_shared<const System>(std::move(s));
}
inline SysPtr nil_sys() { return make_sys(System{NilS{}}); }

// The totally ordered record of past reduction keys, newest first.
// The terminating eps is implicit. Keys are pairwise distinct.
struct DepHistory {
  std::vector<Key> keys;

  bool empty() const { return keys.empty(); }
  std::size_t size() const { return keys.size(); }
  bool contains(Key k) const {
    for (Key x : keys)
      if (x == k) return true;
    return false;
  }
  Key newest() const { return keys.front(); }
  DepHistory pushed(Key k) const {
    DepHistory d;
    d.keys.reserve(keys.size() + 1);
    d.keys.push_back(k);
    d.keys.insert(d.keys.end(), keys.begin(), keys.end());
    return d;
  }
  // Suffix strictly after key k (k must occur).
  DepHistory suffix_after(Key k) const;

  friend bool operator==(const DepHistory& a, const DepHistory& b) {
    return a.keys == b.keys;
  }
  friend bool operator!=(const DepHistory& a, const DepHistory& b) {
    return !(a == b);
  }
};

// The unit of execution: a dependency history paired with a system.
struct Configuration {
  DepHistory history;
  SysPtr system;
};

// --- key accounting -------------------------------------------------------

std::set<Key> keys_of(const ProcPtr& p);
std::set<Key> keys_of(const SysPtr& s);
std::set<Key> keys_of(const DepHistory& d);
std::set<Key> keys_of(const Configuration& c);

// --- free identifiers -----------------------------------------------------

std::set<std::string> free_names(const ProcPtr& p);
std::set<std::string> free_names(const SysPtr& s);
std::set<std::string> free_keyvars(const ProcPtr& p);
std::set<std::string> free_procvars(const ProcPtr& p);

// --- substitution ---------------------------------------------------------

// Replace free occurrences of the key variable `var` by key `k`,
// respecting shadowing by inner binders.
ProcPtr substitute_keyvar(const ProcPtr& p, const std::string& var, Key k);

// Replace free occurrences of the process variable `var` by `repl`,
// alpha-renaming binders of `p` that would capture free identifiers
// of `repl`.
ProcPtr substitute_procvar(const ProcPtr& p, const std::string& var,
                           const ProcPtr& repl);

// Rename every key through `map` (keys absent from the map are kept).
SysPtr rename_keys(const SysPtr& s, const std::vector<std::pair<Key, Key>>& map);
ProcPtr rename_keys(const ProcPtr& p, const std::vector<std::pair<Key, Key>>& map);

// Rename free channel-name occurrences through `map`.
SysPtr rename_free_names(const SysPtr& s,
                         const std::vector<std::pair<std::string, std::string>>& map);
ProcPtr rename_free_names(const ProcPtr& p,
                          const std::vector<std::pair<std::string, std::string>>& map);

// True when the term contains no rollback construct anywhere.
bool roll_free(const ProcPtr& p);
bool roll_free(const SysPtr& s);

// Raised when a configurable resource bound is exceeded.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace revy

#endif
