#include "revy/term.hpp"

#include <algorithm>
#include <map>

namespace revy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

DepHistory DepHistory::suffix_after(Key k) const {
  DepHistory out;
  auto it = std::find(keys.begin(), keys.end(), k);
  if (it == keys.end())
    throw std::invalid_argument("suffix_after: key not in history");
  out.keys.assign(it + 1, keys.end());
  return out;
}

// --- key accounting -------------------------------------------------------

static void collect_keys(const ProcPtr& p, std::set<Key>& out);

static void collect_key(Key k, std::set<Key>& out) {
  if (k != eps_key) out.insert(k);
}

static void collect_keys(const ProcPtr& p, std::set<Key>& out) {
  std::visit(overloaded{
                 [&](const SumP& s) {
                   for (const auto& br : s.summands) collect_keys(br.continuation, out);
                 },
                 [&](const ParP& q) {
                   collect_keys(q.left, out);
                   collect_keys(q.right, out);
                 },
                 [&](const NewP& q) { collect_keys(q.body, out); },
                 [&](const RecP& q) { collect_keys(q.body, out); },
                 [&](const VarP&) {},
                 [&](const RollP& q) {
                   if (!q.is_var()) collect_key(q.key, out);
                 },
             },
             p->node);
}

static void collect_keys(const SysPtr& s, std::set<Key>& out) {
  std::visit(overloaded{
                 [&](const NilS&) {},
                 [&](const NewS& q) { collect_keys(q.body, out); },
                 [&](const ParS& q) {
                   collect_keys(q.left, out);
                   collect_keys(q.right, out);
                 },
                 [&](const NamedS& q) {
                   collect_key(q.key, out);
                   collect_keys(q.proc, out);
                 },
                 [&](const MemS& q) {
                   collect_key(q.content_key, out);
                   collect_key(q.key, out);
                   collect_keys(q.content, out);
                 },
             },
             s->node);
}

std::set<Key> keys_of(const ProcPtr& p) {
  std::set<Key> out;
  collect_keys(p, out);
  return out;
}
std::set<Key> keys_of(const SysPtr& s) {
  std::set<Key> out;
  collect_keys(s, out);
  return out;
}
std::set<Key> keys_of(const DepHistory& d) {
  std::set<Key> out;
  for (Key k : d.keys) collect_key(k, out);
  return out;
}
std::set<Key> keys_of(const Configuration& c) {
  std::set<Key> out = keys_of(c.history);
  collect_keys(c.system, out);
  return out;
}

// --- free identifiers -----------------------------------------------------

static void collect_free_names(const ProcPtr& p, std::set<std::string>& bound,
                               std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const SumP& s) {
                   for (const auto& br : s.summands) {
                     if (!br.prefix.is_tau() && !bound.count(br.prefix.channel))
                       out.insert(br.prefix.channel);
                     collect_free_names(br.continuation, bound, out);
                   }
                 },
                 [&](const ParP& q) {
                   collect_free_names(q.left, bound, out);
                   collect_free_names(q.right, bound, out);
                 },
                 [&](const NewP& q) {
                   bool fresh = bound.insert(q.name).second;
                   collect_free_names(q.body, bound, out);
                   if (fresh) bound.erase(q.name);
                 },
                 [&](const RecP& q) { collect_free_names(q.body, bound, out); },
                 [&](const VarP&) {},
                 [&](const RollP&) {},
             },
             p->node);
}

static void collect_free_names(const SysPtr& s, std::set<std::string>& bound,
                               std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const NilS&) {},
                 [&](const NewS& q) {
                   bool fresh = bound.insert(q.name).second;
                   collect_free_names(q.body, bound, out);
                   if (fresh) bound.erase(q.name);
                 },
                 [&](const ParS& q) {
                   collect_free_names(q.left, bound, out);
                   collect_free_names(q.right, bound, out);
                 },
                 [&](const NamedS& q) { collect_free_names(q.proc, bound, out); },
                 [&](const MemS& q) { collect_free_names(q.content, bound, out); },
             },
             s->node);
}

std::set<std::string> free_names(const ProcPtr& p) {
  std::set<std::string> bound, out;
  collect_free_names(p, bound, out);
  return out;
}
std::set<std::string> free_names(const SysPtr& s) {
  std::set<std::string> bound, out;
  collect_free_names(s, bound, out);
  return out;
}

static void collect_free_keyvars(const ProcPtr& p, std::set<std::string>& bound,
                                 std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const SumP& s) {
                   for (const auto& br : s.summands) {
                     bool fresh = br.binder && bound.insert(*br.binder).second;
                     collect_free_keyvars(br.continuation, bound, out);
                     if (fresh) bound.erase(*br.binder);
                   }
                 },
                 [&](const ParP& q) {
                   collect_free_keyvars(q.left, bound, out);
                   collect_free_keyvars(q.right, bound, out);
                 },
                 [&](const NewP& q) { collect_free_keyvars(q.body, bound, out); },
                 [&](const RecP& q) {
                   bool fresh = q.binder && bound.insert(*q.binder).second;
                   collect_free_keyvars(q.body, bound, out);
                   if (fresh) bound.erase(*q.binder);
                 },
                 [&](const VarP&) {},
                 [&](const RollP& q) {
                   if (q.is_var() && !bound.count(q.keyvar)) out.insert(q.keyvar);
                 },
             },
             p->node);
}

std::set<std::string> free_keyvars(const ProcPtr& p) {
  std::set<std::string> bound, out;
  collect_free_keyvars(p, bound, out);
  return out;
}

static void collect_free_procvars(const ProcPtr& p, std::set<std::string>& bound,
                                  std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const SumP& s) {
                   for (const auto& br : s.summands)
                     collect_free_procvars(br.continuation, bound, out);
                 },
                 [&](const ParP& q) {
                   collect_free_procvars(q.left, bound, out);
                   collect_free_procvars(q.right, bound, out);
                 },
                 [&](const NewP& q) { collect_free_procvars(q.body, bound, out); },
                 [&](const RecP& q) {
                   bool fresh = bound.insert(q.var).second;
                   collect_free_procvars(q.body, bound, out);
                   if (fresh) bound.erase(q.var);
                 },
                 [&](const VarP& q) {
                   if (!bound.count(q.var)) out.insert(q.var);
                 },
                 [&](const RollP&) {},
             },
             p->node);
}

std::set<std::string> free_procvars(const ProcPtr& p) {
  std::set<std::string> bound, out;
  collect_free_procvars(p, bound, out);
  return out;
}

// --- substitution ---------------------------------------------------------

ProcPtr substitute_keyvar(const ProcPtr& p, const std::string& var, Key k) {
  return std::visit(
      overloaded{
          [&](const SumP& s) -> ProcPtr {
            SumP out;
            out.summands.reserve(s.summands.size());
            for (const auto& br : s.summands) {
              if (br.binder && *br.binder == var)
                out.summands.push_back(br);  // shadowed
              else
                out.summands.push_back(
                    Summand{br.prefix, br.binder,
                            substitute_keyvar(br.continuation, var, k)});
            }
            return make_proc(Process{std::move(out)});
          },
          [&](const ParP& q) -> ProcPtr {
            return make_proc(Process{ParP{substitute_keyvar(q.left, var, k),
                                          substitute_keyvar(q.right, var, k)}});
          },
          [&](const NewP& q) -> ProcPtr {
            return make_proc(
                Process{NewP{q.name, substitute_keyvar(q.body, var, k)}});
          },
          [&](const RecP& q) -> ProcPtr {
            if (q.binder && *q.binder == var) return p;  // shadowed
            return make_proc(Process{
                RecP{q.var, q.binder, substitute_keyvar(q.body, var, k)}});
          },
          [&](const VarP&) -> ProcPtr { return p; },
          [&](const RollP& q) -> ProcPtr {
            if (q.is_var() && q.keyvar == var)
              return make_proc(Process{RollP{"", k}});
            return p;
          },
      },
      p->node);
}

namespace {

// Every identifier token occurring in the term, bound or free. Used to
// pick clash-free names when alpha-renaming.
static void collect_tokens(const ProcPtr& p, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const SumP& s) {
                   for (const auto& br : s.summands) {
                     if (!br.prefix.is_tau()) out.insert(br.prefix.channel);
                     if (br.binder) out.insert(*br.binder);
                     collect_tokens(br.continuation, out);
                   }
                 },
                 [&](const ParP& q) {
                   collect_tokens(q.left, out);
                   collect_tokens(q.right, out);
                 },
                 [&](const NewP& q) {
                   out.insert(q.name);
                   collect_tokens(q.body, out);
                 },
                 [&](const RecP& q) {
                   if (q.binder) out.insert(*q.binder);
                   collect_tokens(q.body, out);
                 },
                 [&](const VarP&) {},
                 [&](const RollP& q) {
                   if (q.is_var()) out.insert(q.keyvar);
                 },
             },
             p->node);
}

// Capture-avoiding process-variable substitution. Binders in the walked
// term that clash with free identifiers of the replacement get renamed.
struct ProcvarSubst {
  const std::string& var;
  const ProcPtr& repl;
  std::set<std::string> repl_names;
  std::set<std::string> repl_keyvars;
  int rename_counter = 0;

  std::string fresh(const std::string& base, const ProcPtr& scope) {
    std::set<std::string> taken = repl_names;
    taken.insert(repl_keyvars.begin(), repl_keyvars.end());
    collect_tokens(scope, taken);
    std::string cand;
    do {
      cand = base + "_" + std::to_string(++rename_counter);
    } while (taken.count(cand));
    return cand;
  }

  ProcPtr walk(const ProcPtr& p) {
    return std::visit(
        overloaded{
            [&](const SumP& s) -> ProcPtr {
              SumP out;
              for (const auto& br : s.summands) {
                Summand b = br;
                if (b.binder && repl_keyvars.count(*b.binder) &&
                    free_procvars(b.continuation).count(var)) {
                  std::string nb = fresh(*b.binder, b.continuation);
                  ProcPtr renamed = rename_keyvar(b.continuation, *b.binder, nb);
                  b = Summand{b.prefix, nb, renamed};
                }
                b.continuation = walk(b.continuation);
                out.summands.push_back(std::move(b));
              }
              return make_proc(Process{std::move(out)});
            },
            [&](const ParP& q) -> ProcPtr {
              return make_proc(Process{ParP{walk(q.left), walk(q.right)}});
            },
            [&](const NewP& q) -> ProcPtr {
              NewP n = q;
              if (repl_names.count(n.name) && free_procvars(n.body).count(var)) {
                std::string nn = fresh(n.name, n.body);
                n.body = rename_free_names(n.body, {{n.name, nn}});
                n.name = nn;
              }
              n.body = walk(n.body);
              return make_proc(Process{std::move(n)});
            },
            [&](const RecP& q) -> ProcPtr {
              if (q.var == var) return p;  // shadowed
              RecP r = q;
              if (r.binder && repl_keyvars.count(*r.binder) &&
                  free_procvars(r.body).count(var)) {
                std::string nb = fresh(*r.binder, r.body);
                r.body = rename_keyvar(r.body, *r.binder, nb);
                r.binder = nb;
              }
              r.body = walk(r.body);
              return make_proc(Process{std::move(r)});
            },
            [&](const VarP& q) -> ProcPtr { return q.var == var ? repl : p; },
            [&](const RollP&) -> ProcPtr { return p; },
        },
        p->node);
  }

  ProcPtr operator()(const ProcPtr& p) { return walk(p); }

  // Rename free occurrences of key variable `from` to `to`.
  static ProcPtr rename_keyvar(const ProcPtr& p, const std::string& from,
                               const std::string& to) {
    return std::visit(
        overloaded{
            [&](const SumP& s) -> ProcPtr {
              SumP out;
              for (const auto& br : s.summands) {
                if (br.binder && *br.binder == from)
                  out.summands.push_back(br);
                else
                  out.summands.push_back(Summand{
                      br.prefix, br.binder,
                      rename_keyvar(br.continuation, from, to)});
              }
              return make_proc(Process{std::move(out)});
            },
            [&](const ParP& q) -> ProcPtr {
              return make_proc(Process{ParP{rename_keyvar(q.left, from, to),
                                            rename_keyvar(q.right, from, to)}});
            },
            [&](const NewP& q) -> ProcPtr {
              return make_proc(
                  Process{NewP{q.name, rename_keyvar(q.body, from, to)}});
            },
            [&](const RecP& q) -> ProcPtr {
              if (q.binder && *q.binder == from) return p;
              return make_proc(Process{
                  RecP{q.var, q.binder, rename_keyvar(q.body, from, to)}});
            },
            [&](const VarP&) -> ProcPtr { return p; },
            [&](const RollP& q) -> ProcPtr {
              if (q.is_var() && q.keyvar == from)
                return make_proc(Process{RollP{to, eps_key}});
              return p;
            },
        },
        p->node);
  }
};

}  // namespace

ProcPtr substitute_procvar(const ProcPtr& p, const std::string& var,
                           const ProcPtr& repl) {
  ProcvarSubst subst{var, repl, free_names(repl), free_keyvars(repl)};
  return subst(p);
}

// --- renaming -------------------------------------------------------------

static Key map_key(Key k, const std::vector<std::pair<Key, Key>>& map) {
  for (const auto& [from, to] : map)
    if (from == k) return to;
  return k;
}

ProcPtr rename_keys(const ProcPtr& p, const std::vector<std::pair<Key, Key>>& map) {
  return std::visit(
      overloaded{
          [&](const SumP& s) -> ProcPtr {
            SumP out;
            for (const auto& br : s.summands)
              out.summands.push_back(
                  Summand{br.prefix, br.binder, rename_keys(br.continuation, map)});
            return make_proc(Process{std::move(out)});
          },
          [&](const ParP& q) -> ProcPtr {
            return make_proc(
                Process{ParP{rename_keys(q.left, map), rename_keys(q.right, map)}});
          },
          [&](const NewP& q) -> ProcPtr {
            return make_proc(Process{NewP{q.name, rename_keys(q.body, map)}});
          },
          [&](const RecP& q) -> ProcPtr {
            return make_proc(
                Process{RecP{q.var, q.binder, rename_keys(q.body, map)}});
          },
          [&](const VarP&) -> ProcPtr { return p; },
          [&](const RollP& q) -> ProcPtr {
            if (!q.is_var())
              return make_proc(Process{RollP{"", map_key(q.key, map)}});
            return p;
          },
      },
      p->node);
}

SysPtr rename_keys(const SysPtr& s, const std::vector<std::pair<Key, Key>>& map) {
  return std::visit(
      overloaded{
          [&](const NilS&) -> SysPtr { return s; },
          [&](const NewS& q) -> SysPtr {
            return make_sys(System{NewS{q.name, rename_keys(q.body, map)}});
          },
          [&](const ParS& q) -> SysPtr {
            return make_sys(
                System{ParS{rename_keys(q.left, map), rename_keys(q.right, map)}});
          },
          [&](const NamedS& q) -> SysPtr {
            return make_sys(
                System{NamedS{map_key(q.key, map), rename_keys(q.proc, map)}});
          },
          [&](const MemS& q) -> SysPtr {
            return make_sys(System{MemS{map_key(q.content_key, map),
                                        rename_keys(q.content, map),
                                        map_key(q.key, map)}});
          },
      },
      s->node);
}

static std::string map_name(const std::string& n,
                            const std::vector<std::pair<std::string, std::string>>& map) {
  for (const auto& [from, to] : map)
    if (from == n) return to;
  return n;
}

ProcPtr rename_free_names(const ProcPtr& p,
                          const std::vector<std::pair<std::string, std::string>>& map) {
  if (map.empty()) return p;
  return std::visit(
      overloaded{
          [&](const SumP& s) -> ProcPtr {
            SumP out;
            for (const auto& br : s.summands) {
              Action a = br.prefix;
              if (!a.is_tau()) a.channel = map_name(a.channel, map);
              out.summands.push_back(
                  Summand{a, br.binder, rename_free_names(br.continuation, map)});
            }
            return make_proc(Process{std::move(out)});
          },
          [&](const ParP& q) -> ProcPtr {
            return make_proc(Process{ParP{rename_free_names(q.left, map),
                                          rename_free_names(q.right, map)}});
          },
          [&](const NewP& q) -> ProcPtr {
            // Drop mappings shadowed by this binder.
            std::vector<std::pair<std::string, std::string>> inner;
            for (const auto& m : map)
              if (m.first != q.name) inner.push_back(m);
            return make_proc(Process{NewP{q.name, rename_free_names(q.body, inner)}});
          },
          [&](const RecP& q) -> ProcPtr {
            return make_proc(
                Process{RecP{q.var, q.binder, rename_free_names(q.body, map)}});
          },
          [&](const VarP&) -> ProcPtr { return p; },
          [&](const RollP&) -> ProcPtr { return p; },
      },
      p->node);
}

SysPtr rename_free_names(const SysPtr& s,
                         const std::vector<std::pair<std::string, std::string>>& map) {
  if (map.empty()) return s;
  return std::visit(
      overloaded{
          [&](const NilS&) -> SysPtr { return s; },
          [&](const NewS& q) -> SysPtr {
            std::vector<std::pair<std::string, std::string>> inner;
            for (const auto& m : map)
              if (m.first != q.name) inner.push_back(m);
            return make_sys(System{NewS{q.name, rename_free_names(q.body, inner)}});
          },
          [&](const ParS& q) -> SysPtr {
            return make_sys(System{ParS{rename_free_names(q.left, map),
                                        rename_free_names(q.right, map)}});
          },
          [&](const NamedS& q) -> SysPtr {
            return make_sys(System{NamedS{q.key, rename_free_names(q.proc, map)}});
          },
          [&](const MemS& q) -> SysPtr {
            return make_sys(System{MemS{q.content_key,
                                        rename_free_names(q.content, map), q.key}});
          },
      },
      s->node);
}

// --- rollback-free check --------------------------------------------------

bool roll_free(const ProcPtr& p) {
  return std::visit(
      overloaded{
          [&](const SumP& s) {
            for (const auto& br : s.summands)
              if (!roll_free(br.continuation)) return false;
            return true;
          },
          [&](const ParP& q) { return roll_free(q.left) && roll_free(q.right); },
          [&](const NewP& q) { return roll_free(q.body); },
          [&](const RecP& q) { return roll_free(q.body); },
          [&](const VarP&) { return true; },
          [&](const RollP&) { return false; },
      },
      p->node);
}

bool roll_free(const SysPtr& s) {
  return std::visit(
      overloaded{
          [&](const NilS&) { return true; },
          [&](const NewS& q) { return roll_free(q.body); },
          [&](const ParS& q) { return roll_free(q.left) && roll_free(q.right); },
          [&](const NamedS& q) { return roll_free(q.proc); },
          [&](const MemS& q) { return roll_free(q.content); },
      },
      s->node);
}

}  // namespace revy
