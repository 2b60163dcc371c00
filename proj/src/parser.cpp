#include "formadp/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace formadp {

namespace {

struct Token {
  enum class Kind { LParen, RParen, Arrow, Comma, Ident, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      bump();
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::End;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '(') {
      current_ = {Token::Kind::LParen, "(", line_, col_};
      bump();
      return;
    }
    if (c == ')') {
      current_ = {Token::Kind::RParen, ")", line_, col_};
      bump();
      return;
    }
    if (c == ',') {
      current_ = {Token::Kind::Comma, ",", line_, col_};
      bump();
      return;
    }
    std::string word;
    int line = line_, col = col_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' ||
          d == ')' || d == ',')
        break;
      word.push_back(d);
      bump();
    }
    if (word == "->")
      current_ = {Token::Kind::Arrow, word, line, col};
    else
      current_ = {Token::Kind::Ident, word, line, col};
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

[[noreturn]] void fail(const Token& at, const std::string& msg) {
  throw ParseError(at.line, at.col, msg);
}

Token expect(Lexer& lex, Token::Kind kind, const std::string& what) {
  Token t = lex.take();
  if (t.kind != kind) fail(t, "expected " + what + ", found '" + t.text + "'");
  return t;
}

struct RawTerm {
  std::string name;
  std::vector<RawTerm> args;
  bool applied = false;  // explicit argument list (possibly empty)
  int line = 1;
  int col = 1;
};

RawTerm parse_raw_term(Lexer& lex) {
  Token head = lex.take();
  if (head.kind != Token::Kind::Ident)
    fail(head, "expected a term, found '" + head.text + "'");
  RawTerm t;
  t.name = head.text;
  t.line = head.line;
  t.col = head.col;
  if (lex.peek().kind == Token::Kind::LParen) {
    lex.take();
    t.applied = true;
    if (lex.peek().kind != Token::Kind::RParen) {
      t.args.push_back(parse_raw_term(lex));
      while (lex.peek().kind == Token::Kind::Comma) {
        lex.take();
        t.args.push_back(parse_raw_term(lex));
      }
    }
    expect(lex, Token::Kind::RParen, "')'");
  }
  return t;
}

struct RawRule {
  RawTerm lhs;
  RawTerm rhs;
};

struct SigEntry {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  int line = 1;
  int col = 1;
};

/// Collects function symbols of an unsorted problem: every non-variable name
/// becomes a symbol over sort o, with its arity fixed by first use.
void collect_unsorted_symbols(const RawTerm& t,
                              const std::set<std::string>& vars,
                              std::map<std::string, int>& arities,
                              std::map<std::string, std::pair<int, int>>& seen_at) {
  if (!vars.count(t.name)) {
    auto it = arities.find(t.name);
    int n = static_cast<int>(t.args.size());
    if (it == arities.end()) {
      arities[t.name] = n;
      seen_at[t.name] = {t.line, t.col};
    } else if (it->second != n) {
      throw ParseError(t.line, t.col,
                       "symbol '" + t.name + "' used with " +
                           std::to_string(n) + " arguments but declared with " +
                           std::to_string(it->second));
    }
  } else if (t.applied) {
    throw ParseError(t.line, t.col,
                     "variable '" + t.name + "' used with arguments");
  }
  for (const RawTerm& a : t.args)
    collect_unsorted_symbols(a, vars, arities, seen_at);
}

/// Resolves a raw term against the signature, fixing each variable's sort
/// from its context. `expected` is the sort demanded by the parent (kNoSort
/// at a root whose sort is still free).
Term resolve_term(const RawTerm& t, const Signature& sig,
                  const std::set<std::string>& vars, SortId expected,
                  std::map<std::string, SortId>& var_sorts, int rule_id) {
  if (vars.count(t.name)) {
    if (t.applied)
      throw ParseError(t.line, t.col,
                       "variable '" + t.name + "' used with arguments");
    if (expected == kNoSort)
      throw ParseError(t.line, t.col,
                       "cannot determine the sort of variable '" + t.name +
                           "' in rule " + std::to_string(rule_id));
    auto [it, inserted] = var_sorts.emplace(t.name, expected);
    if (!inserted && it->second != expected)
      throw ParseError(t.line, t.col,
                       "rule " + std::to_string(rule_id) + " uses variable '" +
                           t.name + "' at sorts " + sig.sort_name(it->second) +
                           " and " + sig.sort_name(expected));
    return Term::var(t.name, expected);
  }
  auto f = sig.find_symbol(t.name);
  if (!f)
    throw ParseError(t.line, t.col, "unknown symbol '" + t.name + "'");
  const SortDecl& d = sig.decl(*f);
  if (d.arity() != static_cast<int>(t.args.size()))
    throw ParseError(t.line, t.col,
                     "symbol '" + t.name + "' expects " +
                         std::to_string(d.arity()) + " arguments, got " +
                         std::to_string(t.args.size()));
  if (expected != kNoSort && d.result != expected)
    throw ParseError(t.line, t.col,
                     "rule " + std::to_string(rule_id) + " is ill-sorted: '" +
                         t.name + "' has sort " + sig.sort_name(d.result) +
                         " where " + sig.sort_name(expected) + " is needed");
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (int i = 0; i < d.arity(); ++i)
    args.push_back(
        resolve_term(t.args[i], sig, vars, d.args[i], var_sorts, rule_id));
  return Term::app(sig, *f, std::move(args));
}

void collect_var_names(const RawTerm& t, const std::set<std::string>& vars,
                       std::set<std::string>& out) {
  if (vars.count(t.name)) out.insert(t.name);
  for (const RawTerm& a : t.args) collect_var_names(a, vars, out);
}

}  // namespace

ParsedProblem parse_problem(const std::string& text) {
  Lexer lex(text);

  // (VAR ...)
  expect(lex, Token::Kind::LParen, "'('");
  Token kw = expect(lex, Token::Kind::Ident, "VAR");
  if (kw.text != "VAR") fail(kw, "expected VAR block first");
  std::set<std::string> vars;
  while (lex.peek().kind == Token::Kind::Ident) vars.insert(lex.take().text);
  expect(lex, Token::Kind::RParen, "')'");

  // optional (SIG (f A B -> C) ...)
  std::vector<SigEntry> sig_entries;
  bool sorted = false;
  expect(lex, Token::Kind::LParen, "'('");
  kw = expect(lex, Token::Kind::Ident, "SIG or RULES");
  if (kw.text == "SIG") {
    sorted = true;
    while (lex.peek().kind == Token::Kind::LParen) {
      lex.take();
      SigEntry e;
      Token name = expect(lex, Token::Kind::Ident, "symbol name");
      e.name = name.text;
      e.line = name.line;
      e.col = name.col;
      if (vars.count(e.name))
        fail(name, "'" + e.name + "' is declared both as variable and symbol");
      while (lex.peek().kind == Token::Kind::Ident)
        e.arg_sorts.push_back(lex.take().text);
      expect(lex, Token::Kind::Arrow, "'->'");
      e.result_sort = expect(lex, Token::Kind::Ident, "result sort").text;
      expect(lex, Token::Kind::RParen, "')'");
      sig_entries.push_back(std::move(e));
    }
    expect(lex, Token::Kind::RParen, "')'");
    expect(lex, Token::Kind::LParen, "'('");
    kw = expect(lex, Token::Kind::Ident, "RULES");
  }
  if (kw.text != "RULES") fail(kw, "expected RULES block");

  std::vector<RawRule> raw_rules;
  while (lex.peek().kind == Token::Kind::Ident) {
    RawRule r;
    r.lhs = parse_raw_term(lex);
    expect(lex, Token::Kind::Arrow, "'->'");
    r.rhs = parse_raw_term(lex);
    raw_rules.push_back(std::move(r));
  }
  expect(lex, Token::Kind::RParen, "')'");

  // optional (STRATEGY INNERMOST)
  bool innermost = false;
  if (lex.peek().kind == Token::Kind::LParen) {
    lex.take();
    kw = expect(lex, Token::Kind::Ident, "STRATEGY");
    if (kw.text != "STRATEGY") fail(kw, "expected STRATEGY block");
    Token val = expect(lex, Token::Kind::Ident, "strategy name");
    if (val.text != "INNERMOST")
      fail(val, "unsupported strategy '" + val.text + "'");
    innermost = true;
    expect(lex, Token::Kind::RParen, "')'");
  }
  Token trailing = lex.take();
  if (trailing.kind != Token::Kind::End)
    fail(trailing, "unexpected '" + trailing.text + "' after the last block");

  ParsedProblem out;
  out.sorted = sorted;
  out.system.innermost_only = innermost;
  Signature& sig = out.system.sig;

  if (sorted) {
    for (const SigEntry& e : sig_entries) {
      SortDecl d;
      for (const std::string& s : e.arg_sorts) d.args.push_back(sig.intern_sort(s));
      d.result = sig.intern_sort(e.result_sort);
      try {
        sig.add_symbol(e.name, d);
      } catch (const Error& err) {
        throw ParseError(e.line, e.col, err.what());
      }
    }
  } else {
    sig.intern_sort("o");
    std::map<std::string, int> arities;
    std::map<std::string, std::pair<int, int>> seen_at;
    for (const RawRule& r : raw_rules) {
      collect_unsorted_symbols(r.lhs, vars, arities, seen_at);
      collect_unsorted_symbols(r.rhs, vars, arities, seen_at);
    }
    SortId o = *sig.find_sort("o");
    for (const auto& [name, arity] : arities) {
      SortDecl d;
      d.args.assign(arity, o);
      d.result = o;
      sig.add_symbol(name, d);
    }
  }

  int id = 0;
  for (const RawRule& r : raw_rules) {
    ++id;
    if (vars.count(r.lhs.name))
      throw ParseError(r.lhs.line, r.lhs.col,
                       "rule " + std::to_string(id) +
                           ": left-hand side is a variable");
    std::set<std::string> lvars, rvars;
    collect_var_names(r.lhs, vars, lvars);
    collect_var_names(r.rhs, vars, rvars);
    for (const std::string& v : rvars)
      if (!lvars.count(v))
        throw VarConditionError(
            r.rhs.line, r.rhs.col,
            "rule " + std::to_string(id) + ": right-hand side uses '" + v +
                "' which the left-hand side does not bind");

    std::map<std::string, SortId> var_sorts;
    Term lhs = resolve_term(r.lhs, sig, vars, kNoSort, var_sorts, id);
    Term rhs = resolve_term(r.rhs, sig, vars, lhs.sort(), var_sorts, id);
    Rule rule{id, std::move(lhs), std::move(rhs), Provenance{}};
    validate_rule(rule, sig, /*require_var_condition=*/true);
    out.system.rules.push_back(std::move(rule));
  }
  return out;
}

ParsedProblem parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string print_rule(const Rule& r, const Signature& sig) {
  return r.lhs.to_string(sig) + " -> " + r.rhs.to_string(sig);
}

std::string print_problem(const Mtrs& system) {
  const Signature& sig = system.sig;
  std::set<std::string> var_names;
  std::set<SymbolId> used;
  for (const Rule& r : system.rules) {
    for (const Term& side : {r.lhs, r.rhs}) {
      for (const Var& v : side.vars()) var_names.insert(v.name);
      for (const Position& p : side.positions()) {
        const Term& s = side.subterm_at(p);
        if (s.is_app()) used.insert(s.sym());
      }
    }
  }

  std::ostringstream out;
  out << "(VAR";
  for (const std::string& v : var_names) out << " " << v;
  out << ")\n";

  bool single_o = sig.user_sorts().size() == 1 &&
                  sig.sort_name(sig.user_sorts()[0]) == "o";
  if (!single_o) {
    out << "(SIG";
    for (SymbolId f : used) {
      const SortDecl& d = sig.decl(f);
      out << "\n  (" << sig.symbol_name(f);
      for (SortId a : d.args) out << " " << sig.sort_name(a);
      out << " -> " << sig.sort_name(d.result) << ")";
    }
    out << "\n)\n";
  }

  out << "(RULES\n";
  for (const Rule& r : system.rules)
    out << "  " << print_rule(r, sig) << "\n";
  out << ")\n";
  if (system.innermost_only) out << "(STRATEGY INNERMOST)\n";
  return out.str();
}

}  // namespace formadp
