#include "revy/printer.hpp"

#include <variant>

namespace revy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Precedence levels of the process grammar, loosest first.
enum Level { level_par = 0, level_sum = 1, level_term = 2 };

std::string proc_at(const ProcPtr& p, Level ctx);

std::string summand_str(const Summand& b) {
  std::string out = print_action(b.prefix);
  if (b.binder) out += "(" + *b.binder + ")";
  out += "." + proc_at(b.continuation, level_term);
  return out;
}

std::string proc_at(const ProcPtr& p, Level ctx) {
  return std::visit(
      overloaded{
          [&](const SumP& s) -> std::string {
            if (s.summands.empty()) return "0";
            if (s.summands.size() == 1) return summand_str(s.summands.front());
            std::string out;
            for (std::size_t i = 0; i < s.summands.size(); ++i) {
              if (i) out += " + ";
              out += summand_str(s.summands[i]);
            }
            if (ctx > level_sum) out = "(" + out + ")";
            return out;
          },
          [&](const ParP& q) -> std::string {
            // '|' parses right-associatively, so right spines print flat
            // while left-nested children keep parens; the tree shape
            // survives a reparse.
            auto left_side = [](const ProcPtr& c) {
              std::string str = proc_at(c, level_sum);
              if (std::holds_alternative<ParP>(c->node)) str = "(" + str + ")";
              return str;
            };
            std::string out = left_side(q.left) + " | ";
            if (std::holds_alternative<ParP>(q.right->node))
              out += proc_at(q.right, level_par);
            else
              out += proc_at(q.right, level_sum);
            if (ctx > level_par) out = "(" + out + ")";
            return out;
          },
          [&](const NewP& q) -> std::string {
            return "new " + q.name + ". " + proc_at(q.body, level_term);
          },
          [&](const RecP& q) -> std::string {
            std::string out = "rec " + q.var;
            if (q.binder) out += "(" + *q.binder + ")";
            out += ". " + proc_at(q.body, level_term);
            return out;
          },
          [&](const VarP& q) -> std::string { return q.var; },
          [&](const RollP& q) -> std::string {
            if (q.is_var()) return "roll<" + q.keyvar + ">";
            return "roll<" + print_key(q.key) + ">";
          },
      },
      p->node);
}

std::string sys_str(const SysPtr& s) {
  return std::visit(
      overloaded{
          [&](const NilS&) -> std::string { return "0"; },
          [&](const NewS& q) -> std::string {
            std::string body = sys_str(q.body);
            if (std::holds_alternative<ParS>(q.body->node))
              body = "(" + body + ")";
            return "new " + q.name + ". " + body;
          },
          [&](const ParS& q) -> std::string {
            std::string left = sys_str(q.left);
            if (std::holds_alternative<ParS>(q.left->node))
              left = "(" + left + ")";
            return left + " | " + sys_str(q.right);
          },
          [&](const NamedS& q) -> std::string {
            return print_key(q.key) + ": " + proc_at(q.proc, level_sum);
          },
          [&](const MemS& q) -> std::string {
            return "mem[" + print_key(q.content_key) + ": " +
                   proc_at(q.content, level_sum) + "; " + print_key(q.key) + "]";
          },
      },
      s->node);
}

}  // namespace

std::string print_action(const Action& a) {
  if (a.is_tau()) return "tau";
  return a.negative ? "'" + a.channel : a.channel;
}

std::string print_key(Key k) {
  return k == eps_key ? "eps" : std::to_string(k);
}

std::string print_process(const ProcPtr& p) { return proc_at(p, level_par); }

std::string print_system(const SysPtr& s) { return sys_str(s); }

std::string print_history(const DepHistory& d) {
  if (d.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < d.keys.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(d.keys[i]);
  }
  return out;
}

std::string print_configuration(const Configuration& c) {
  return print_history(c.history) + " |- " + print_system(c.system);
}

}  // namespace revy
