#include "revy/reduction.hpp"

#include <algorithm>
#include <variant>

#include "revy/printer.hpp"

namespace revy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool key_compatible(const Configuration& c) {
  auto sys_keys = keys_of(c.system);
  auto hist_keys = keys_of(c.history);
  return std::includes(hist_keys.begin(), hist_keys.end(), sys_keys.begin(),
                       sys_keys.end());
}

void require_key_compatible(const Configuration& c) {
  if (!key_compatible(c))
    throw std::invalid_argument("ill-formed configuration: " + config_repr(c));
}

ProcPtr fire_summand(const Summand& br, Key k) {
  if (br.binder) return substitute_keyvar(br.continuation, *br.binder, k);
  return br.continuation;
}

ProcPtr unfold_rec(const ProcPtr& rec, Key k) {
  const auto& r = std::get<RecP>(rec->node);
  ProcPtr body = substitute_procvar(r.body, r.var, rec);
  if (r.binder) body = substitute_keyvar(body, *r.binder, k);
  return body;
}

std::string participant_str(const NamedAtom& n) {
  return print_system(make_sys(System{NamedS{n.key, n.proc}}));
}

Configuration successor_config(const FlatSystem& base,
                               const std::vector<Component>& comps,
                               const DepHistory& history, Key k) {
  FlatSystem flat{base.binders, comps};
  return Configuration{history.pushed(k), canonicalize(recompose(flat))};
}

SysPtr rollback_raw(const SysPtr& m, Key k) {
  return std::visit(
      overloaded{
          [&](const NilS&) -> SysPtr { return m; },
          [&](const NewS& q) -> SysPtr {
            return make_sys(System{NewS{q.name, rollback_raw(q.body, k)}});
          },
          [&](const ParS& q) -> SysPtr {
            return make_sys(
                System{ParS{rollback_raw(q.left, k), rollback_raw(q.right, k)}});
          },
          [&](const NamedS& q) -> SysPtr {
            return q.key == k ? nil_sys() : m;
          },
          [&](const MemS& q) -> SysPtr {
            if (q.key == k)
              return make_sys(System{NamedS{q.content_key, q.content}});
            return m;
          },
      },
      m->node);
}

std::vector<ForwardStep> enumerate_forward(const Configuration& c, Key k) {
  FlatSystem flat = decompose(c.system);
  std::vector<ForwardStep> out;

  for (std::size_t i = 0; i < flat.comps.size(); ++i) {
    const auto* named = std::get_if<NamedAtom>(&flat.comps[i]);
    if (!named) continue;

    if (const auto* sum = std::get_if<SumP>(&named->proc->node)) {
      for (const auto& br : sum->summands) {
        if (br.prefix.is_tau()) {
          std::vector<Component> comps = flat.comps;
          comps[i] = NamedAtom{k, fire_summand(br, k)};
          comps.push_back(MemoryAtom{named->key, named->proc, k});
          out.push_back(ForwardStep{k,
                                    RedexKind::internal,
                                    "",
                                    {participant_str(*named)},
                                    successor_config(flat, comps, c.history, k)});
        }
      }
    } else if (std::holds_alternative<RecP>(named->proc->node)) {
      std::vector<Component> comps = flat.comps;
      comps[i] = NamedAtom{k, unfold_rec(named->proc, k)};
      comps.push_back(MemoryAtom{named->key, named->proc, k});
      out.push_back(ForwardStep{k,
                                RedexKind::rec_unfold,
                                "",
                                {participant_str(*named)},
                                successor_config(flat, comps, c.history, k)});
    }
  }

  // Synchronisations between distinct components.
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
          comps[i] = NamedAtom{k, fire_summand(bi, k)};
          comps[j] = NamedAtom{k, fire_summand(bj, k)};
          comps.push_back(MemoryAtom{ni->key, ni->proc, k});
          comps.push_back(MemoryAtom{nj->key, nj->proc, k});
          out.push_back(
              ForwardStep{k,
                          RedexKind::sync,
                          bi.prefix.channel,
                          {participant_str(*ni), participant_str(*nj)},
                          successor_config(flat, comps, c.history, k)});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::string redex_kind_name(RedexKind k) {
  switch (k) {
    case RedexKind::sync:
      return "sync";
    case RedexKind::internal:
      return "internal";
    case RedexKind::rec_unfold:
      return "rec_unfold";
  }
  return "?";
}

Key next_fresh_key(const Configuration& c) {
  Key mx = 0;
  for (Key k : c.history.keys) mx = std::max(mx, k);
  return mx + 1;
}

std::vector<ForwardStep> forward_steps(const Configuration& c) {
  require_key_compatible(c);
  return enumerate_forward(c, next_fresh_key(c));
}

std::vector<ForwardStep> forward_steps_with_key(const Configuration& c, Key k) {
  require_key_compatible(c);
  if (k == eps_key || c.history.contains(k) || keys_of(c.system).count(k))
    throw std::invalid_argument("forward key is not fresh");
  return enumerate_forward(c, k);
}

SysPtr rollback_one(const SysPtr& m, Key k) {
  return canonicalize(rollback_raw(m, k));
}

Configuration rollback_to(const Configuration& c, Key target_key) {
  if (!c.history.contains(target_key))
    throw std::invalid_argument("rollback target not in history");
  SysPtr s = c.system;
  DepHistory rest = c.history;
  while (true) {
    Key k = rest.newest();
    s = rollback_raw(s, k);
    rest = rest.suffix_after(k);
    if (k == target_key) break;
  }
  return Configuration{rest, canonicalize(s)};
}

std::vector<BackwardStep> backward_steps(const Configuration& c) {
  require_key_compatible(c);
  FlatSystem flat = decompose(c.system);
  std::set<Key> targets;
  for (const Component& comp : flat.comps) {
    const auto* named = std::get_if<NamedAtom>(&comp);
    if (!named) continue;
    const auto* roll = std::get_if<RollP>(&named->proc->node);
    if (roll && !roll->is_var() && c.history.contains(roll->key))
      targets.insert(roll->key);
  }
  std::vector<BackwardStep> out;
  for (Key k : targets) {
    std::vector<Key> undone;
    for (Key h : c.history.keys) {
      undone.push_back(h);
      if (h == k) break;
    }
    out.push_back(BackwardStep{k, std::move(undone), rollback_to(c, k)});
  }
  return out;
}

std::vector<Configuration> all_steps(const Configuration& c) {
  std::vector<Configuration> out;
  for (auto& s : forward_steps(c)) out.push_back(std::move(s.successor));
  for (auto& s : backward_steps(c)) out.push_back(std::move(s.successor));
  return out;
}

bool well_formed(const Configuration& c) {
  Configuration cur = canonical_config(c);
  while (true) {
    if (!key_compatible(cur)) return false;
    if (cur.history.empty()) return true;
    Key k = cur.history.newest();
    Configuration prev{cur.history.suffix_after(k), rollback_one(cur.system, k)};
    if (!key_compatible(prev)) return false;
    std::string want = print_system(cur.system);
    bool found = false;
    for (const ForwardStep& s : enumerate_forward(prev, k)) {
      if (print_system(s.successor.system) == want) {
        found = true;
        break;
      }
    }
    if (!found) return false;
    cur = std::move(prev);
  }
}

bool omega_barb(const Configuration& c) {
  FlatSystem flat = decompose(c.system);
  for (const Component& comp : flat.comps) {
    const auto* named = std::get_if<NamedAtom>(&comp);
    if (!named) continue;
    const auto* sum = std::get_if<SumP>(&named->proc->node);
    if (!sum) continue;
    for (const auto& br : sum->summands)
      if (!br.prefix.is_tau() && !br.prefix.negative &&
          br.prefix.channel == omega_name)
        return true;
  }
  return false;
}

bool rollback_barb(const Configuration& c, const std::set<Key>& ks) {
  FlatSystem flat = decompose(c.system);
  for (const Component& comp : flat.comps) {
    const auto* named = std::get_if<NamedAtom>(&comp);
    if (!named) continue;
    const auto* roll = std::get_if<RollP>(&named->proc->node);
    if (roll && !roll->is_var() && ks.count(roll->key)) return true;
  }
  return false;
}

Configuration canonical_config(const Configuration& c) {
  return Configuration{c.history, canonicalize(c.system)};
}

std::string config_repr(const Configuration& c) {
  return print_configuration(canonical_config(c));
}

}  // namespace revy
