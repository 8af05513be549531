#include "revy/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "revy/printer.hpp"

namespace revy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// --- limited normal form ----------------------------------------------------
// Distributes keys over parallel and hoists restrictions out of named
// processes, left to right, until every named process has a sum, recursion,
// rollback or variable at the top. Parallel structure is untouched.

SysPtr lnf_named(Key k, const ProcPtr& p) {
  return std::visit(
      overloaded{
          [&](const ParP& q) -> SysPtr {
            return make_sys(System{ParS{lnf_named(k, q.left), lnf_named(k, q.right)}});
          },
          [&](const NewP& q) -> SysPtr {
            return make_sys(System{NewS{q.name, lnf_named(k, q.body)}});
          },
          [&](const auto&) -> SysPtr {
            return make_sys(System{NamedS{k, p}});
          },
      },
      p->node);
}

SysPtr lnf_sys(const SysPtr& s) {
  return std::visit(
      overloaded{
          [&](const NilS&) -> SysPtr { return s; },
          [&](const NewS& q) -> SysPtr {
            return make_sys(System{NewS{q.name, lnf_sys(q.body)}});
          },
          [&](const ParS& q) -> SysPtr {
            return make_sys(System{ParS{lnf_sys(q.left), lnf_sys(q.right)}});
          },
          [&](const NamedS& q) -> SysPtr { return lnf_named(q.key, q.proc); },
          [&](const MemS&) -> SysPtr { return s; },
      },
      s->node);
}

// --- alpha normalization ----------------------------------------------------
// Renames every bound identifier positionally so alpha-equivalent terms
// print identically. Each identifier class has its own prefix; channel
// names additionally skip an avoid set, since free occurrences must not
// be captured.

struct AlphaState {
  std::string name_prefix = "#b";
  std::string keyvar_prefix = "#g";
  std::string procvar_prefix = "#X";
  const std::set<std::string>* avoid = nullptr;
  int names = 0, keyvars = 0, procvars = 0;

  std::string next_name() {
    for (;;) {
      std::string cand = name_prefix + std::to_string(++names);
      if (!avoid || !avoid->count(cand)) return cand;
    }
  }
  std::string next_keyvar() { return keyvar_prefix + std::to_string(++keyvars); }
  std::string next_procvar() { return procvar_prefix + std::to_string(++procvars); }
};

using Env = std::map<std::string, std::string>;

ProcPtr alpha_proc(const ProcPtr& p, AlphaState& st, Env names, Env keyvars,
                   Env procvars) {
  return std::visit(
      overloaded{
          [&](const SumP& s) -> ProcPtr {
            SumP out;
            for (const auto& br : s.summands) {
              Action a = br.prefix;
              if (!a.is_tau()) {
                auto it = names.find(a.channel);
                if (it != names.end()) a.channel = it->second;
              }
              Env kv = keyvars;
              std::optional<std::string> binder = br.binder;
              if (binder) {
                std::string nb = st.next_keyvar();
                kv[*binder] = nb;
                binder = nb;
              }
              out.summands.push_back(Summand{
                  a, binder, alpha_proc(br.continuation, st, names, kv, procvars)});
            }
            return make_proc(Process{std::move(out)});
          },
          [&](const ParP& q) -> ProcPtr {
            return make_proc(
                Process{ParP{alpha_proc(q.left, st, names, keyvars, procvars),
                             alpha_proc(q.right, st, names, keyvars, procvars)}});
          },
          [&](const NewP& q) -> ProcPtr {
            std::string nn = st.next_name();
            Env inner = names;
            inner[q.name] = nn;
            return make_proc(
                Process{NewP{nn, alpha_proc(q.body, st, inner, keyvars, procvars)}});
          },
          [&](const RecP& q) -> ProcPtr {
            Env pv = procvars;
            std::string nx = st.next_procvar();
            pv[q.var] = nx;
            Env kv = keyvars;
            std::optional<std::string> binder = q.binder;
            if (binder) {
              std::string nb = st.next_keyvar();
              kv[*binder] = nb;
              binder = nb;
            }
            return make_proc(
                Process{RecP{nx, binder, alpha_proc(q.body, st, names, kv, pv)}});
          },
          [&](const VarP& q) -> ProcPtr {
            auto it = procvars.find(q.var);
            return it != procvars.end() ? make_proc(Process{VarP{it->second}}) : p;
          },
          [&](const RollP& q) -> ProcPtr {
            if (q.is_var()) {
              auto it = keyvars.find(q.keyvar);
              if (it != keyvars.end())
                return make_proc(Process{RollP{it->second, eps_key}});
            }
            return p;
          },
      },
      p->node);
}

SysPtr alpha_sys(const SysPtr& s, AlphaState& st, Env names) {
  return std::visit(
      overloaded{
          [&](const NilS&) -> SysPtr { return s; },
          [&](const NewS& q) -> SysPtr {
            std::string nn = st.next_name();
            Env inner = names;
            inner[q.name] = nn;
            return make_sys(System{NewS{nn, alpha_sys(q.body, st, inner)}});
          },
          [&](const ParS& q) -> SysPtr {
            return make_sys(
                System{ParS{alpha_sys(q.left, st, names), alpha_sys(q.right, st, names)}});
          },
          [&](const NamedS& q) -> SysPtr {
            return make_sys(
                System{NamedS{q.key, alpha_proc(q.proc, st, names, {}, {})}});
          },
          [&](const MemS& q) -> SysPtr {
            return make_sys(System{MemS{q.content_key,
                                        alpha_proc(q.content, st, names, {}, {}),
                                        q.key}});
          },
      },
      s->node);
}

// --- extraction -------------------------------------------------------------

struct Extraction {
  std::vector<std::string> placeholders;  // in extraction order
  std::vector<Component> comps;
  int counter = 0;
};

void extract(const SysPtr& s, Env names, Extraction& ex) {
  std::visit(
      overloaded{
          [&](const NilS&) {},
          [&](const NewS& q) {
            std::string ph = "#r" + std::to_string(++ex.counter);
            ex.placeholders.push_back(ph);
            Env inner = names;
            inner[q.name] = ph;
            extract(q.body, inner, ex);
          },
          [&](const ParS& q) {
            extract(q.left, names, ex);
            extract(q.right, names, ex);
          },
          [&](const NamedS& q) {
            std::vector<std::pair<std::string, std::string>> map(names.begin(),
                                                                 names.end());
            ex.comps.push_back(NamedAtom{q.key, rename_free_names(q.proc, map)});
          },
          [&](const MemS& q) {
            std::vector<std::pair<std::string, std::string>> map(names.begin(),
                                                                 names.end());
            ex.comps.push_back(
                MemoryAtom{q.content_key, rename_free_names(q.content, map), q.key});
          },
      },
      s->node);
}

ProcPtr comp_proc(const Component& c) {
  if (const auto* n = std::get_if<NamedAtom>(&c)) return n->proc;
  return std::get<MemoryAtom>(c).content;
}

Component with_proc(const Component& c, ProcPtr p) {
  if (const auto* n = std::get_if<NamedAtom>(&c))
    return NamedAtom{n->key, std::move(p)};
  const auto& m = std::get<MemoryAtom>(c);
  return MemoryAtom{m.content_key, std::move(p), m.key};
}

std::string comp_str(const Component& c) {
  return print_system(make_sys(
      std::visit(overloaded{
                     [](const NamedAtom& n) { return System{NamedS{n.key, n.proc}}; },
                     [](const MemoryAtom& m) {
                       return System{MemS{m.content_key, m.content, m.key}};
                     },
                 },
                 c)));
}

// First `n` names of the shape <prefix><i> avoiding the given set.
std::vector<std::string> name_pool(const std::string& prefix, std::size_t n,
                                   const std::set<std::string>& avoid) {
  std::vector<std::string> pool;
  for (int i = 1; pool.size() < n; ++i) {
    std::string cand = prefix + std::to_string(i);
    if (!avoid.count(cand)) pool.push_back(cand);
  }
  return pool;
}

}  // namespace

SysPtr canonicalize(const SysPtr& s) {
  std::set<std::string> fn = free_names(s);

  Extraction ex;
  extract(lnf_sys(s), {}, ex);

  // Drop binders that bind nothing.
  std::set<std::string> used;
  for (const Component& c : ex.comps) {
    auto f = free_names(comp_proc(c));
    used.insert(f.begin(), f.end());
  }
  std::vector<std::string> live;
  for (const std::string& ph : ex.placeholders)
    if (used.count(ph)) live.push_back(ph);

  if (live.size() > max_canonical_binders)
    throw capacity_error("too many top-level restrictions (" +
                         std::to_string(live.size()) + ")");

  // Normalize bound identifiers inside each component. Inner restriction
  // names draw from the q-pool, disjoint from the r-pool used for the
  // hoisted binders, so no assignment below can capture them.
  for (Component& c : ex.comps) {
    AlphaState st;
    st.name_prefix = "q";
    st.keyvar_prefix = "g";
    st.procvar_prefix = "X";
    st.avoid = &fn;
    c = with_proc(c, alpha_proc(comp_proc(c), st, {}, {}, {}));
  }

  if (ex.comps.empty()) return nil_sys();

  std::vector<std::string> pool = name_pool("r", live.size(), fn);

  // Pick the binder assignment whose sorted serialization is least.
  std::string best;
  std::vector<Component> best_comps;
  std::vector<std::size_t> perm(live.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::pair<std::string, std::string>> assign;
    for (std::size_t i = 0; i < live.size(); ++i)
      assign.emplace_back(live[i], pool[perm[i]]);

    std::vector<std::pair<std::string, Component>> pairs;
    pairs.reserve(ex.comps.size());
    for (const Component& c : ex.comps) {
      Component rc = with_proc(c, rename_free_names(comp_proc(c), assign));
      std::string str = comp_str(rc);
      pairs.emplace_back(std::move(str), std::move(rc));
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::string serialized;
    for (const auto& pr : pairs) serialized += pr.first + "\x01";

    if (best.empty() || serialized < best) {
      best = std::move(serialized);
      best_comps.clear();
      for (auto& pr : pairs) best_comps.push_back(std::move(pr.second));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  FlatSystem flat;
  flat.binders = pool;  // ascending; binder order is immaterial
  flat.comps = std::move(best_comps);
  return recompose(flat);
}

std::string canonical_repr(const SysPtr& s) {
  return print_system(canonicalize(s));
}

bool structurally_equal(const SysPtr& a, const SysPtr& b) {
  return canonical_repr(a) == canonical_repr(b);
}

bool limited_eq(const SysPtr& a, const SysPtr& b) {
  AlphaState st1, st2;
  return print_system(alpha_sys(lnf_sys(a), st1, {})) ==
         print_system(alpha_sys(lnf_sys(b), st2, {}));
}

FlatSystem decompose(const SysPtr& s) {
  return decompose_canonical(canonicalize(s));
}

FlatSystem decompose_canonical(const SysPtr& s) {
  FlatSystem flat;
  const System* cur = s.get();
  while (const auto* nu = std::get_if<NewS>(&cur->node)) {
    flat.binders.push_back(nu->name);
    cur = nu->body.get();
  }
  // Collect the parallel leaves.
  std::vector<const System*> stack{cur};
  while (!stack.empty()) {
    const System* top = stack.back();
    stack.pop_back();
    std::visit(overloaded{
                   [&](const NilS&) {},
                   [&](const NewS&) {
                     throw std::logic_error("decompose: nested restriction");
                   },
                   [&](const ParS& q) {
                     stack.push_back(q.right.get());
                     stack.push_back(q.left.get());
                   },
                   [&](const NamedS& q) {
                     flat.comps.push_back(NamedAtom{q.key, q.proc});
                   },
                   [&](const MemS& q) {
                     flat.comps.push_back(
                         MemoryAtom{q.content_key, q.content, q.key});
                   },
               },
               top->node);
  }
  return flat;
}

SysPtr recompose(const FlatSystem& flat) {
  SysPtr body;
  if (flat.comps.empty()) {
    body = nil_sys();
  } else {
    body = make_sys(std::visit(
        overloaded{
            [](const NamedAtom& n) { return System{NamedS{n.key, n.proc}}; },
            [](const MemoryAtom& m) {
              return System{MemS{m.content_key, m.content, m.key}};
            },
        },
        flat.comps.back()));
    for (std::size_t i = flat.comps.size() - 1; i-- > 0;) {
      SysPtr left = make_sys(std::visit(
          overloaded{
              [](const NamedAtom& n) { return System{NamedS{n.key, n.proc}}; },
              [](const MemoryAtom& m) {
                return System{MemS{m.content_key, m.content, m.key}};
              },
          },
          flat.comps[i]));
      body = make_sys(System{ParS{left, body}});
    }
  }
  if (flat.comps.empty()) return body;  // binders over nothing vanish
  for (std::size_t i = flat.binders.size(); i-- > 0;)
    body = make_sys(System{NewS{flat.binders[i], body}});
  return body;
}

bool initial_form(const SysPtr& s) {
  return std::visit(
      overloaded{
          [&](const NilS&) { return true; },
          [&](const NewS& q) { return initial_form(q.body); },
          [&](const ParS& q) {
            return initial_form(q.left) && initial_form(q.right);
          },
          [&](const NamedS& q) { return q.key == eps_key; },
          [&](const MemS&) { return false; },
      },
      s->node);
}

}  // namespace revy
