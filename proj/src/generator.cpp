#include "revy/generator.hpp"

#include <variant>

namespace revy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Gen {
  std::mt19937& rng;
  const GenOptions& opt;
  int prefixes_left;
  int restrictions_left;
  int binder_counter = 0;
  int recvar_counter = 0;

  double coin() { return std::uniform_real_distribution<>(0.0, 1.0)(rng); }
  int pick(int n) { return std::uniform_int_distribution<>(0, n - 1)(rng); }

  std::string channel() {
    return std::string(1, static_cast<char>('a' + pick(opt.alphabet)));
  }

  Action action() {
    if (coin() < 0.2) return tau_action();
    return visible(channel(), coin() < 0.5);
  }

  // scope: key variables currently in scope; recs: process variables.
  ProcPtr gen(std::vector<std::string> scope, std::vector<std::string> recs) {
    if (prefixes_left <= 0) return leaf(scope, recs);

    double r = coin();
    if (r < opt.restriction_prob && restrictions_left > 0) {
      --restrictions_left;
      std::string name = channel();
      return make_proc(Process{NewP{name, gen(scope, recs)}});
    }
    if (r < opt.restriction_prob + 0.15 && prefixes_left >= 2) {
      ProcPtr left = gen(scope, recs);
      ProcPtr right = gen(scope, recs);
      return make_proc(Process{ParP{left, right}});
    }
    if (opt.allow_recursion && r < opt.restriction_prob + 0.22 &&
        prefixes_left >= 2) {
      std::string var = "R" + std::to_string(++recvar_counter);
      std::optional<std::string> binder;
      if (coin() < opt.roll_density)
        binder = "k" + std::to_string(++binder_counter);
      std::vector<std::string> inner_scope = scope;
      if (binder) inner_scope.push_back(*binder);
      std::vector<std::string> inner_recs = recs;
      inner_recs.push_back(var);
      // Keep the variable guarded: the body is a sum.
      ProcPtr body = sum(inner_scope, inner_recs);
      return make_proc(Process{RecP{var, binder, body}});
    }
    return sum(scope, recs);
  }

  ProcPtr sum(const std::vector<std::string>& scope,
              const std::vector<std::string>& recs) {
    int n = 1 + (prefixes_left >= 2 && coin() < 0.35 ? pick(2) + 1 : 0);
    SumP out;
    for (int i = 0; i < n && prefixes_left > 0; ++i) {
      --prefixes_left;
      Action a = action();
      std::optional<std::string> binder;
      std::vector<std::string> inner = scope;
      if (coin() < opt.roll_density) {
        binder = "k" + std::to_string(++binder_counter);
        inner.push_back(*binder);
      }
      out.summands.push_back(Summand{a, binder, gen(inner, recs)});
    }
    if (out.summands.empty()) return leaf(scope, recs);
    return make_proc(Process{std::move(out)});
  }

  ProcPtr leaf(const std::vector<std::string>& scope,
               const std::vector<std::string>& recs) {
    if (!scope.empty() && coin() < opt.roll_density)
      return make_proc(Process{RollP{scope[pick(static_cast<int>(scope.size()))],
                                     eps_key}});
    if (!recs.empty() && coin() < 0.4)
      return make_proc(Process{VarP{recs[pick(static_cast<int>(recs.size()))]}});
    return nil_proc();
  }
};

}  // namespace

ProcPtr random_process(std::mt19937& rng, const GenOptions& opt) {
  Gen g{rng, opt, opt.max_prefixes, opt.max_restrictions};
  return g.gen({}, {});
}

SysPtr random_initial_system(std::mt19937& rng, const GenOptions& opt) {
  // Mix standalone terms with compositions; pairing a term with its
  // mirror guarantees enabled synchronisations.
  int mode = std::uniform_int_distribution<>(0, 2)(rng);
  ProcPtr p;
  if (mode == 0) {
    p = random_process(rng, opt);
  } else {
    GenOptions half = opt;
    half.max_prefixes = std::max(2, opt.max_prefixes / 2);
    ProcPtr q = random_process(rng, half);
    ProcPtr r = mode == 1 ? mirror(q) : random_process(rng, half);
    p = make_proc(Process{ParP{q, r}});
  }
  return make_sys(System{NamedS{eps_key, p}});
}

ProcPtr mirror(const ProcPtr& p) {
  return std::visit(
      overloaded{
          [&](const SumP& s) -> ProcPtr {
            SumP out;
            for (const auto& br : s.summands)
              out.summands.push_back(
                  Summand{br.prefix.complement(), br.binder, mirror(br.continuation)});
            return make_proc(Process{std::move(out)});
          },
          [&](const ParP& q) -> ProcPtr {
            return make_proc(Process{ParP{mirror(q.left), mirror(q.right)}});
          },
          [&](const NewP& q) -> ProcPtr {
            return make_proc(Process{NewP{q.name, mirror(q.body)}});
          },
          [&](const RecP& q) -> ProcPtr {
            return make_proc(Process{RecP{q.var, q.binder, mirror(q.body)}});
          },
          [&](const VarP&) -> ProcPtr { return p; },
          [&](const RollP&) -> ProcPtr { return p; },
      },
      p->node);
}

}  // namespace revy
