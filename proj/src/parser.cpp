#include "revy/parser.hpp"

#include <cctype>
#include <variant>

namespace revy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  bool allow_keys;  // configuration grammar when true

  explicit Parser(const std::string& t, bool keys) : text(t), allow_keys(keys) {}

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool try_consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_consume(c)) fail(std::string("expected '") + c + "'");
  }

  // Peeks an identifier without consuming.
  std::string peek_ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos])) return "";
    std::size_t end = pos;
    while (end < text.size() && ident_char(text[end])) ++end;
    return text.substr(pos, end - pos);
  }

  std::string consume_ident() {
    std::string id = peek_ident();
    if (id.empty()) fail("expected identifier");
    pos += id.size();
    return id;
  }

  bool try_keyword(const std::string& kw) {
    if (peek_ident() == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }

  unsigned long consume_number() {
    skip_ws();
    if (!at_digit()) fail("expected number");
    unsigned long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<unsigned long>(text[pos] - '0');
      if (v > 0xffffffffUL) fail("key out of range");
      ++pos;
    }
    return v;
  }

  Key consume_key_token() {
    // 'eps' or a positive integer (integers only under the
    // configuration grammar).
    if (try_keyword("eps")) return eps_key;
    if (at_digit()) {
      std::size_t at = pos;
      unsigned long v = consume_number();
      if (!allow_keys) throw parse_error("literal key not allowed here", at);
      if (v == 0) throw parse_error("key must be positive", at);
      return static_cast<Key>(v);
    }
    fail("expected key");
  }

  std::string consume_name() {
    std::string id = consume_ident();
    if (!std::islower(static_cast<unsigned char>(id[0])))
      fail("channel names start with a lowercase letter");
    return id;
  }

  bool ident_is_keyword(const std::string& id) {
    return id == "new" || id == "rec" || id == "tau" || id == "roll" ||
           id == "rl" || id == "mem" || id == "eps";
  }

  // --- processes ----------------------------------------------------------

  ProcPtr parse_proc() {  // par level, right-associative
    std::vector<ProcPtr> parts;
    parts.push_back(parse_sum());
    while (try_consume('|')) parts.push_back(parse_sum());
    ProcPtr p = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      p = make_proc(Process{ParP{parts[i], p}});
    return p;
  }

  ProcPtr parse_sum() {
    std::vector<ProcPtr> parts;
    parts.push_back(parse_term());
    while (try_consume('+')) parts.push_back(parse_term());
    if (parts.size() == 1) return parts.front();
    SumP sum;
    for (const ProcPtr& part : parts) {
      const auto* s = std::get_if<SumP>(&part->node);
      if (!s) fail("only guarded terms can be summed");
      // An empty sum is 0 and contributes no branch.
      for (const auto& br : s->summands) sum.summands.push_back(br);
    }
    return make_proc(Process{std::move(sum)});
  }

  ProcPtr parse_term() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (c == '0') {
      ++pos;
      return nil_proc();
    }
    if (c == '(') {
      ++pos;
      ProcPtr p = parse_proc();
      expect(')');
      return p;
    }
    if (c == '\'') return parse_prefixed();
    std::string id = peek_ident();
    if (id.empty()) fail("expected process term");
    if (id == "new") {
      pos += id.size();
      std::size_t at = pos;
      std::string name = consume_name();
      if (name == omega_name)
        throw parse_error("'" + omega_name + "' may not be restricted", at);
      expect('.');
      ProcPtr body = parse_term();
      return make_proc(Process{NewP{name, body}});
    }
    if (id == "rec") {
      pos += id.size();
      std::string var = consume_ident();
      if (!std::isupper(static_cast<unsigned char>(var[0])))
        fail("process variables start with an uppercase letter");
      std::optional<std::string> binder;
      if (try_consume('(')) {
        binder = consume_name();
        expect(')');
      }
      expect('.');
      ProcPtr body = parse_term();
      return make_proc(Process{RecP{var, binder, body}});
    }
    if (id == "roll" || id == "rl") {
      pos += id.size();
      expect('<');
      RollP roll;
      if (at_digit()) {
        std::size_t at = pos;
        unsigned long v = consume_number();
        if (!allow_keys) throw parse_error("literal key not allowed here", at);
        if (v == 0) throw parse_error("key must be positive", at);
        roll.key = static_cast<Key>(v);
      } else if (try_keyword("eps")) {
        fail("cannot roll back the initial key");
      } else {
        roll.keyvar = consume_name();
      }
      expect('>');
      return make_proc(Process{std::move(roll)});
    }
    if (std::isupper(static_cast<unsigned char>(id[0]))) {
      pos += id.size();
      return make_proc(Process{VarP{id}});
    }
    return parse_prefixed();
  }

  ProcPtr parse_prefixed() {
    Action act;
    if (try_consume('\'')) {
      act = visible(consume_name(), true);
    } else {
      std::string id = peek_ident();
      if (id == "tau") {
        pos += id.size();
        act = tau_action();
      } else if (!id.empty() && std::islower(static_cast<unsigned char>(id[0])) &&
                 !ident_is_keyword(id)) {
        pos += id.size();
        act = visible(id);
      } else {
        fail("expected action prefix");
      }
    }
    std::optional<std::string> binder;
    if (try_consume('(')) {
      binder = consume_name();
      expect(')');
    }
    ProcPtr cont = nil_proc();
    if (try_consume('.')) cont = parse_term();
    return make_proc(Process{SumP{{Summand{act, binder, cont}}}});
  }

  // --- systems --------------------------------------------------------------

  SysPtr parse_system_term() {  // system par level, right-associative
    std::vector<SysPtr> parts;
    parts.push_back(parse_system_atom());
    while (try_consume('|')) {
      // Do not eat the turnstile of a configuration.
      if (peek() == '-') {
        --pos;
        break;
      }
      parts.push_back(parse_system_atom());
    }
    SysPtr s = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      s = make_sys(System{ParS{parts[i], s}});
    return s;
  }

  SysPtr parse_system_atom() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    char c = peek();
    if (c == '0') {
      ++pos;
      return nil_sys();
    }
    if (c == '(') {
      ++pos;
      SysPtr s = parse_system_term();
      expect(')');
      return s;
    }
    if (at_digit()) {
      Key k = consume_key_token();
      expect(':');
      ProcPtr p = parse_sum();
      return make_sys(System{NamedS{k, p}});
    }
    std::string id = peek_ident();
    if (id == "new") {
      pos += id.size();
      std::size_t at = pos;
      std::string name = consume_name();
      if (name == omega_name)
        throw parse_error("'" + omega_name + "' may not be restricted", at);
      expect('.');
      SysPtr body = parse_system_atom();
      return make_sys(System{NewS{name, body}});
    }
    if (id == "mem") {
      pos += id.size();
      std::size_t at = pos;
      if (!allow_keys) throw parse_error("memories not allowed here", at);
      expect('[');
      Key ck = consume_key_token();
      expect(':');
      ProcPtr content = parse_sum();
      if (!std::holds_alternative<SumP>(content->node) &&
          !std::holds_alternative<RecP>(content->node))
        throw parse_error("memory content must be a sum or a recursion", at);
      expect(';');
      Key k = consume_key_token();
      if (k == eps_key) fail("memory key must be positive");
      expect(']');
      return make_sys(System{MemS{ck, content, k}});
    }
    if (id == "eps") {
      pos += id.size();
      expect(':');
      ProcPtr p = parse_sum();
      return make_sys(System{NamedS{eps_key, p}});
    }
    fail("expected system term");
  }

  DepHistory parse_history() {
    DepHistory d;
    if (try_keyword("eps")) return d;
    if (!at_digit()) fail("expected history");
    while (at_digit()) {
      std::size_t at = pos;
      unsigned long v = consume_number();
      if (v == 0) throw parse_error("key must be positive", at);
      Key k = static_cast<Key>(v);
      if (d.contains(k)) throw parse_error("duplicate key in history", at);
      d.keys.push_back(k);
    }
    return d;
  }

  void expect_end() {
    skip_ws();
    if (pos < text.size()) fail("trailing input");
  }
};

void check_scoping(const ProcPtr& p) {
  auto kv = free_keyvars(p);
  if (!kv.empty())
    throw parse_error("unbound key variable '" + *kv.begin() + "'", 0);
  auto pv = free_procvars(p);
  if (!pv.empty())
    throw parse_error("unbound process variable '" + *pv.begin() + "'", 0);
}

void check_scoping(const SysPtr& s) {
  std::visit(overloaded{
                 [&](const NilS&) {},
                 [&](const NewS& q) { check_scoping(q.body); },
                 [&](const ParS& q) {
                   check_scoping(q.left);
                   check_scoping(q.right);
                 },
                 [&](const NamedS& q) { check_scoping(q.proc); },
                 [&](const MemS& q) { check_scoping(q.content); },
             },
             s->node);
}

}  // namespace

SysPtr parse_system(const std::string& text) {
  Parser p(text, /*keys=*/false);
  SysPtr s = p.parse_system_term();
  p.expect_end();
  check_scoping(s);
  return s;
}

ProcPtr parse_process(const std::string& text) {
  Parser p(text, /*keys=*/false);
  ProcPtr q = p.parse_proc();
  p.expect_end();
  check_scoping(q);
  return q;
}

Configuration parse_configuration(const std::string& text) {
  Parser p(text, /*keys=*/true);
  DepHistory d = p.parse_history();
  p.skip_ws();
  if (!(p.try_consume('|') && p.try_consume('-')))
    p.fail("expected '|-'");
  SysPtr s = p.parse_system_term();
  p.expect_end();
  check_scoping(s);
  return Configuration{std::move(d), std::move(s)};
}

}  // namespace revy
