#ifndef REVY_LTS_HPP
#define REVY_LTS_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "revy/reduction.hpp"
#include "revy/term.hpp"

namespace revy {

// A transition label: the action together with the fresh key stamped on it.
struct Label {
  Action action;
  Key key = eps_key;

  friend bool operator==(const Label& a, const Label& b) {
    return a.action == b.action && a.key == b.key;
  }
  friend bool operator<(const Label& a, const Label& b) {
    if (!(a.action == b.action)) return a.action < b.action;
    return a.key < b.key;
  }
};

std::string print_label(const Label& l);

// All transitions of the forward LTS: visible prefixes of named processes
// (blocked when their channel is restricted), internal prefixes, recursion
// unfoldings, and synchronisations of complementary prefixes. Successor
// systems are canonical; the fresh key is allocated deterministically.
std::vector<std::pair<Label, Configuration>> lts_transitions(const Configuration& c);

// Same with a caller-chosen fresh key.
std::vector<std::pair<Label, Configuration>> lts_transitions_with_key(
    const Configuration& c, Key k);

// Keys renamed by the order-preserving bijection sending the history,
// oldest first, to 1..n; the system is canonicalized.
Configuration canonical_state(const Configuration& c);

struct GraphOptions {
  int depth = 6;                  // forward depth bound; negative = unbounded
  bool include_backward = false;  // add rollback edges (never counted as depth)
  bool reduction_mode = false;    // expand reduction steps only (all labels tau)
  std::size_t state_cap = 200000;
};

// Canonical-form state space. States are identified up to structural
// equivalence and key renumbering.
struct StateGraph {
  struct FwdEdge {
    Label label;
    std::size_t to;
  };
  struct BwdEdge {
    Key key;
    std::size_t to;
  };

  std::vector<Configuration> states;  // canonical
  std::vector<std::string> reprs;
  std::vector<std::vector<FwdEdge>> forward;
  std::vector<std::vector<BwdEdge>> backward;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t root = 0;
  int depth = 0;
  bool truncated = false;

  std::size_t size() const { return states.size(); }
  std::size_t edge_count() const;
};

// Breadth-first exploration from the canonical root. Forward expansion is
// bounded by history length relative to the root; rollback edges shrink
// the history and are always followed.
StateGraph build_graph(const Configuration& root, const GraphOptions& opt);

std::string dot_export(const StateGraph& g);

}  // namespace revy

#endif
