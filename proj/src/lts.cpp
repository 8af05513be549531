#include "revy/lts.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <variant>

#include "revy/printer.hpp"

namespace revy {

namespace {

ProcPtr fire(const Summand& br, Key k) {
  if (br.binder) return substitute_keyvar(br.continuation, *br.binder, k);
  return br.continuation;
}

// Successor without normalization; callers canonicalize once, either
// directly or through canonical_state.
Configuration assemble(const FlatSystem& base, std::vector<Component> comps,
                       const DepHistory& history, Key k) {
  FlatSystem flat{base.binders, std::move(comps)};
  return Configuration{history.pushed(k), recompose(flat)};
}

std::vector<std::pair<Label, Configuration>> raw_transitions(
    const Configuration& c, Key k, bool assume_canonical);

}  // namespace

std::string print_label(const Label& l) {
  return print_action(l.action) + "(" + print_key(l.key) + ")";
}

namespace {

std::vector<std::pair<Label, Configuration>> raw_transitions(
    const Configuration& c, Key k, bool assume_canonical) {
  FlatSystem flat =
      assume_canonical ? decompose_canonical(c.system) : decompose(c.system);
  std::set<std::string> restricted(flat.binders.begin(), flat.binders.end());
  std::vector<std::pair<Label, Configuration>> out;

  // Base transitions of single named processes.
  for (std::size_t i = 0; i < flat.comps.size(); ++i) {
    const auto* named = std::get_if<NamedAtom>(&flat.comps[i]);
    if (!named) continue;
    if (const auto* sum = std::get_if<SumP>(&named->proc->node)) {
      for (const auto& br : sum->summands) {
        if (!br.prefix.is_tau() && restricted.count(br.prefix.channel))
          continue;  // restricted channels only synchronise
        std::vector<Component> comps = flat.comps;
        comps[i] = NamedAtom{k, fire(br, k)};
        comps.push_back(MemoryAtom{named->key, named->proc, k});
        out.emplace_back(Label{br.prefix, k},
                         assemble(flat, std::move(comps), c.history, k));
      }
    } else if (std::holds_alternative<RecP>(named->proc->node)) {
      const auto& rec = std::get<RecP>(named->proc->node);
      ProcPtr unfolded = substitute_procvar(rec.body, rec.var, named->proc);
      if (rec.binder) unfolded = substitute_keyvar(unfolded, *rec.binder, k);
      std::vector<Component> comps = flat.comps;
      comps[i] = NamedAtom{k, unfolded};
      comps.push_back(MemoryAtom{named->key, named->proc, k});
      out.emplace_back(Label{tau_action(), k},
                       assemble(flat, std::move(comps), c.history, k));
    }
  }

  // Synchronisations of complementary prefixes in distinct components.
  for (std::size_t i = 0; i < flat.comps.size(); ++i) {
    const auto* ni = std::get_if<NamedAtom>(&flat.comps[i]);
    if (!ni) continue;
    const auto* si = std::get_if<SumP>(&ni->proc->node);
    if (!si) continue;
    for (std::size_t j = i + 1; j < flat.comps.size(); ++j) {
      const auto* nj = std::get_if<NamedAtom>(&flat.comps[j]);
      if (!nj) continue;
      const auto* sj = std::get_if<SumP>(&nj->proc->node);
      if (!sj) continue;
      for (const auto& bi : si->summands) {
        if (bi.prefix.is_tau()) continue;
        for (const auto& bj : sj->summands) {
          if (bj.prefix != bi.prefix.complement()) continue;
          std::vector<Component> comps = flat.comps;
          comps[i] = NamedAtom{k, fire(bi, k)};
          comps[j] = NamedAtom{k, fire(bj, k)};
          comps.push_back(MemoryAtom{ni->key, ni->proc, k});
          comps.push_back(MemoryAtom{nj->key, nj->proc, k});
          out.emplace_back(Label{tau_action(), k},
                           assemble(flat, std::move(comps), c.history, k));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<Label, Configuration>> lts_transitions_with_key(
    const Configuration& c, Key k) {
  auto out = raw_transitions(c, k, false);
  for (auto& [label, succ] : out) succ = canonical_config(succ);
  return out;
}

std::vector<std::pair<Label, Configuration>> lts_transitions(const Configuration& c) {
  {
    auto sys_keys = keys_of(c.system);
    auto hist_keys = keys_of(c.history);
    if (!std::includes(hist_keys.begin(), hist_keys.end(), sys_keys.begin(),
                       sys_keys.end()))
      throw std::invalid_argument("ill-formed configuration: " + config_repr(c));
  }
  return lts_transitions_with_key(c, next_fresh_key(c));
}

Configuration canonical_state(const Configuration& c) {
  std::vector<std::pair<Key, Key>> map;
  Key next = 1;
  // History is newest first; the oldest key becomes 1.
  for (auto it = c.history.keys.rbegin(); it != c.history.keys.rend(); ++it)
    map.emplace_back(*it, next++);
  DepHistory hist;
  for (Key i = static_cast<Key>(c.history.size()); i >= 1; --i)
    hist.keys.push_back(i);
  return Configuration{std::move(hist), canonicalize(rename_keys(c.system, map))};
}

std::size_t StateGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& es : forward) n += es.size();
  for (const auto& es : backward) n += es.size();
  return n;
}

StateGraph build_graph(const Configuration& root, const GraphOptions& opt) {
  StateGraph g;
  g.depth = opt.depth;

  Configuration rc = canonical_state(root);
  std::size_t root_len = rc.history.size();

  auto intern = [&](Configuration cfg) -> std::size_t {
    std::string repr = print_configuration(cfg);
    auto it = g.index.find(repr);
    if (it != g.index.end()) return it->second;
    if (g.states.size() >= opt.state_cap)
      throw capacity_error("state cap exceeded (" + std::to_string(opt.state_cap) + ")");
    std::size_t id = g.states.size();
    g.states.push_back(std::move(cfg));
    g.reprs.push_back(repr);
    g.forward.emplace_back();
    g.backward.emplace_back();
    g.index.emplace(std::move(repr), id);
    return id;
  };

  g.root = intern(rc);
  std::deque<std::size_t> frontier{g.root};
  std::vector<bool> expanded(1, false);

  while (!frontier.empty()) {
    std::size_t id = frontier.front();
    frontier.pop_front();
    if (expanded[id]) continue;
    expanded[id] = true;

    const Configuration cfg = g.states[id];  // copy: states vector may grow
    bool within_depth =
        opt.depth < 0 ||
        cfg.history.size() < root_len + static_cast<std::size_t>(opt.depth);

    std::vector<std::pair<Label, Configuration>> steps;
    if (opt.reduction_mode) {
      for (auto& fs : forward_steps(cfg))
        steps.emplace_back(Label{tau_action(), fs.key}, std::move(fs.successor));
    } else {
      steps = raw_transitions(cfg, next_fresh_key(cfg), true);
    }

    if (!within_depth) {
      if (!steps.empty()) g.truncated = true;
    } else {
      for (auto& [label, succ] : steps) {
        std::size_t to = intern(canonical_state(succ));
        if (to >= expanded.size()) {
          expanded.resize(to + 1, false);
          frontier.push_back(to);
        }
        g.forward[id].push_back(StateGraph::FwdEdge{label, to});
      }
    }

    if (opt.include_backward) {
      for (auto& bs : backward_steps(cfg)) {
        std::size_t to = intern(canonical_state(bs.successor));
        if (to >= expanded.size()) {
          expanded.resize(to + 1, false);
          frontier.push_back(to);
        }
        g.backward[id].push_back(StateGraph::BwdEdge{bs.target_key, to});
      }
    }
  }
  return g;
}

std::string dot_export(const StateGraph& g) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out;
  };
  std::string dot = "digraph lts {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    dot += "  s" + std::to_string(i) + " [label=\"" + escape(g.reprs[i]) + "\"";
    if (i == g.root) dot += ", shape=box";
    dot += "];\n";
  }
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    for (const auto& e : g.forward[i])
      dot += "  s" + std::to_string(i) + " -> s" + std::to_string(e.to) +
             " [label=\"" + escape(print_label(e.label)) + "\"];\n";
    for (const auto& e : g.backward[i])
      dot += "  s" + std::to_string(i) + " -> s" + std::to_string(e.to) +
             " [label=\"roll " + print_key(e.key) + "\", style=dashed];\n";
  }
  dot += "}\n";
  return dot;
}

}  // namespace revy
