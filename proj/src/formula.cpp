#include "lmst/formula.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace lmst {

// ---- factories ----

Formula Formula::Eq(Term a, Term b) {
  Formula f;
  f.op = Conn::Atom;
  f.atom = AtomKind::Eq;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return f;
}

Formula Formula::In(Term a, Term b) {
  Formula f;
  f.op = Conn::Atom;
  f.atom = AtomKind::In;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return f;
}

Formula Formula::Pred(std::string name, std::vector<Term> args) {
  Formula f;
  f.op = Conn::Pred;
  f.name = std::move(name);
  f.args = std::move(args);
  return f;
}

Formula Formula::Not(Formula a) {
  Formula f;
  f.op = Conn::Not;
  f.kids.push_back(std::move(a));
  return f;
}

static Formula binary(Conn op, Formula a, Formula b) {
  Formula f;
  f.op = op;
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

Formula Formula::And(Formula a, Formula b) { return binary(Conn::And, std::move(a), std::move(b)); }
Formula Formula::Or(Formula a, Formula b) { return binary(Conn::Or, std::move(a), std::move(b)); }
Formula Formula::Imp(Formula a, Formula b) { return binary(Conn::Imp, std::move(a), std::move(b)); }
Formula Formula::Iff(Formula a, Formula b) { return binary(Conn::Iff, std::move(a), std::move(b)); }

static Formula quant(Conn op, std::string v, Formula body) {
  Formula f;
  f.op = op;
  f.name = std::move(v);
  f.kids.push_back(std::move(body));
  return f;
}

Formula Formula::All(std::string v, Formula body) { return quant(Conn::All, std::move(v), std::move(body)); }
Formula Formula::Ex(std::string v, Formula body) { return quant(Conn::Ex, std::move(v), std::move(body)); }

const Formula* Formula::at_path(const std::vector<int>& path) const {
  const Formula* f = this;
  for (int i : path) {
    if (i < 0 || static_cast<size_t>(i) >= f->kids.size()) return nullptr;
    f = &f->kids[static_cast<size_t>(i)];
  }
  return f;
}

// ---- definition table ----

void DefinitionTable::define(const std::string& name, std::vector<std::string> params, Formula body) {
  defs_[name] = Definition{std::move(params), std::move(body)};
}

const Definition* DefinitionTable::find(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

const DefinitionTable& DefinitionTable::standard() {
  static const DefinitionTable table = [] {
    DefinitionTable t;
    Term a{"a", 0}, b{"b", 0}, w{"w", 0}, u{"u", 0}, v{"v", 0};
    // a sub b  :=  all w. (w in a -> w in b)
    t.define("sub", {"a", "b"}, Formula::All("w", Formula::Imp(Formula::In(w, a), Formula::In(w, b))));
    // a psub b  :=  (all w. (w in a -> w in b)) & ~(a = b)
    t.define("psub", {"a", "b"},
             Formula::And(Formula::All("w", Formula::Imp(Formula::In(w, a), Formula::In(w, b))),
                          Formula::Not(Formula::Eq(a, b))));
    // single(a)  :=  a has exactly one member
    t.define("single", {"a"},
             Formula::Ex("u", Formula::And(Formula::In(u, a),
                                           Formula::All("v", Formula::Imp(Formula::In(v, a), Formula::Eq(v, u))))));
    return t;
  }();
  return table;
}

// ---- lexer ----

namespace {

enum class Tok { Ident, KwAll, KwEx, KwIn, KwSub, KwPsub, KwLabel, LParen, RParen, Dot, Comma, Tilde, Amp, Pipe, Arrow, DArrow, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, int l, int c) { out.push_back(Token{k, std::move(t), l, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    int l = line, cc = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      if (word == "all") push(Tok::KwAll, word, l, cc);
      else if (word == "ex") push(Tok::KwEx, word, l, cc);
      else if (word == "in") push(Tok::KwIn, word, l, cc);
      else if (word == "sub") push(Tok::KwSub, word, l, cc);
      else if (word == "psub") push(Tok::KwPsub, word, l, cc);
      else if (word == "L") push(Tok::KwLabel, word, l, cc);
      else push(Tok::Ident, word, l, cc);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", l, cc); ++i; ++col; break;
      case ')': push(Tok::RParen, ")", l, cc); ++i; ++col; break;
      case '.': push(Tok::Dot, ".", l, cc); ++i; ++col; break;
      case ',': push(Tok::Comma, ",", l, cc); ++i; ++col; break;
      case '~': push(Tok::Tilde, "~", l, cc); ++i; ++col; break;
      case '&': push(Tok::Amp, "&", l, cc); ++i; ++col; break;
      case '|': push(Tok::Pipe, "|", l, cc); ++i; ++col; break;
      case '=': push(Tok::Equals, "=", l, cc); ++i; ++col; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Tok::Arrow, "->", l, cc);
          i += 2;
          col += 2;
        } else {
          throw parse_error("expected '->' after '-'", l, cc);
        }
        break;
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          push(Tok::DArrow, "<->", l, cc);
          i += 3;
          col += 3;
        } else {
          throw parse_error("expected '<->' after '<'", l, cc);
        }
        break;
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", l, cc);
    }
  }
  push(Tok::End, "", line, col);
  return out;
}

// ---- parser ----
//
// fml   := iff
// iff   := imp ("<->" iff)?            right-associative
// imp   := or  ("->" imp)?             right-associative
// or    := and ("|" and)*              left-associative
// and   := unary ("&" unary)*          left-associative
// unary := "~" unary | ("all"|"ex") ident "." fml | primary
// primary := "(" fml ")" | ident "(" term,... ")" | term rel term
// rel   := "=" | "in" | "sub" | "psub"
// term  := ident | "L" term
//
// Quantifier bodies extend maximally to the right.

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  const DefinitionTable& defs;

  const Token& peek() const { return toks[pos]; }
  const Token& get() { return toks[pos++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (at(k)) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string where = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw parse_error(msg + " (found " + where + ")", t.line, t.col);
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) fail(std::string("expected ") + what);
    return get().text;
  }

  Term parse_term() {
    int labels = 0;
    while (accept(Tok::KwLabel)) ++labels;
    if (!at(Tok::Ident)) fail("expected a variable");
    return Term{get().text, labels};
  }

  bool term_ahead() const {
    return at(Tok::Ident) || at(Tok::KwLabel);
  }

  Formula parse_pred_app(const std::string& name, int line, int col) {
    std::vector<Term> args;
    if (!at(Tok::RParen)) {
      args.push_back(parse_term());
      while (accept(Tok::Comma)) args.push_back(parse_term());
    }
    if (!accept(Tok::RParen)) fail("expected ')'");
    const Definition* d = defs.find(name);
    if (!d) throw parse_error("unknown predicate '" + name + "'", line, col);
    if (d->params.size() != args.size())
      throw parse_error("predicate '" + name + "' expects " + std::to_string(d->params.size()) + " arguments", line, col);
    return Formula::Pred(name, std::move(args));
  }

  Formula parse_primary() {
    if (accept(Tok::LParen)) {
      Formula f = parse_formula();
      if (!accept(Tok::RParen)) fail("expected ')'");
      return f;
    }
    if (!term_ahead()) fail("expected a formula");
    // predicate application:  name "(" ... ")"
    if (at(Tok::Ident) && toks[pos + 1].kind == Tok::LParen) {
      Token t = get();
      get();  // '('
      return parse_pred_app(t.text, t.line, t.col);
    }
    Term l = parse_term();
    if (accept(Tok::Equals)) return Formula::Eq(l, parse_term());
    if (accept(Tok::KwIn)) return Formula::In(l, parse_term());
    if (at(Tok::KwSub) || at(Tok::KwPsub)) {
      Token t = get();
      std::string name = t.kind == Tok::KwSub ? "sub" : "psub";
      Term r = parse_term();
      const Definition* d = defs.find(name);
      if (!d) throw parse_error("unknown predicate '" + name + "'", t.line, t.col);
      return Formula::Pred(name, {l, r});
    }
    fail("expected '=', 'in', 'sub' or 'psub' after term");
  }

  Formula parse_unary() {
    if (accept(Tok::Tilde)) return Formula::Not(parse_unary());
    if (at(Tok::KwAll) || at(Tok::KwEx)) {
      bool universal = get().kind == Tok::KwAll;
      std::string v = expect_ident("a variable after quantifier");
      if (!accept(Tok::Dot)) fail("expected '.' after quantified variable");
      Formula body = parse_formula();
      return universal ? Formula::All(v, std::move(body)) : Formula::Ex(v, std::move(body));
    }
    return parse_primary();
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::Amp)) f = Formula::And(std::move(f), parse_unary());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Pipe)) f = Formula::Or(std::move(f), parse_and());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::Arrow)) return Formula::Imp(std::move(f), parse_imp());
    return f;
  }

  Formula parse_formula() {
    Formula f = parse_imp();
    if (accept(Tok::DArrow)) return Formula::Iff(std::move(f), parse_formula());
    return f;
  }
};

}  // namespace

Formula parse(std::string_view text, const DefinitionTable& defs) {
  Parser p{lex(text), 0, defs};
  Formula f = p.parse_formula();
  if (!p.at(Tok::End)) p.fail("unexpected trailing input");
  return f;
}

// ---- rendering ----

std::string render(const Term& t) {
  std::string s;
  for (int i = 0; i < t.labels; ++i) s += "L ";
  s += t.var;
  return s;
}

namespace {

int prec(const Formula& f) {
  switch (f.op) {
    case Conn::Atom:
    case Conn::Pred: return 6;
    case Conn::Not: return 5;
    case Conn::And: return 4;
    case Conn::Or: return 3;
    case Conn::Imp: return 2;
    case Conn::Iff: return 1;
    case Conn::All:
    case Conn::Ex: return 0;
  }
  return 6;
}

std::string render_impl(const Formula& f);

std::string child(const Formula& f, bool parens) {
  std::string s = render_impl(f);
  return parens ? "(" + s + ")" : s;
}

std::string render_binary(const Formula& f, const char* sym, bool right_assoc) {
  int n = prec(f);
  const Formula& l = f.kids[0];
  const Formula& r = f.kids[1];
  bool pl = right_assoc ? prec(l) <= n : prec(l) < n;
  bool pr = right_assoc ? prec(r) < n : prec(r) <= n;
  return child(l, pl) + " " + sym + " " + child(r, pr);
}

std::string render_impl(const Formula& f) {
  switch (f.op) {
    case Conn::Atom:
      return render(f.lhs) + (f.atom == AtomKind::Eq ? " = " : " in ") + render(f.rhs);
    case Conn::Pred:
      if (f.args.size() == 2 && (f.name == "sub" || f.name == "psub"))
        return render(f.args[0]) + " " + f.name + " " + render(f.args[1]);
      else {
        std::string s = f.name + "(";
        for (size_t i = 0; i < f.args.size(); ++i) {
          if (i) s += ", ";
          s += render(f.args[i]);
        }
        return s + ")";
      }
    case Conn::Not:
      return "~(" + render_impl(f.kids[0]) + ")";
    case Conn::And: return render_binary(f, "&", false);
    case Conn::Or: return render_binary(f, "|", false);
    case Conn::Imp: return render_binary(f, "->", true);
    case Conn::Iff: return render_binary(f, "<->", true);
    case Conn::All: return "all " + f.name + ". " + render_impl(f.kids[0]);
    case Conn::Ex: return "ex " + f.name + ". " + render_impl(f.kids[0]);
  }
  return "";
}

}  // namespace

std::string render(const Formula& f) { return render_impl(f); }

// ---- variable bookkeeping ----

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.op) {
    case Conn::Atom:
      if (!bound.count(f.lhs.var)) out.insert(f.lhs.var);
      if (!bound.count(f.rhs.var)) out.insert(f.rhs.var);
      break;
    case Conn::Pred:
      for (const Term& t : f.args)
        if (!bound.count(t.var)) out.insert(t.var);
      break;
    case Conn::All:
    case Conn::Ex: {
      bool added = bound.insert(f.name).second;
      free_vars_rec(f.kids[0], bound, out);
      if (added) bound.erase(f.name);
      break;
    }
    default:
      for (const Formula& k : f.kids) free_vars_rec(k, bound, out);
  }
}

void all_vars_rec(const Formula& f, std::set<std::string>& out) {
  switch (f.op) {
    case Conn::Atom:
      out.insert(f.lhs.var);
      out.insert(f.rhs.var);
      break;
    case Conn::Pred:
      for (const Term& t : f.args) out.insert(t.var);
      break;
    case Conn::All:
    case Conn::Ex:
      out.insert(f.name);
      all_vars_rec(f.kids[0], out);
      break;
    default:
      for (const Formula& k : f.kids) all_vars_rec(k, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  all_vars_rec(f, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

// ---- renaming & substitution ----

namespace {

Term apply_env(const Term& t, const std::map<std::string, std::string>& env) {
  auto it = env.find(t.var);
  return it == env.end() ? t : Term{it->second, t.labels};
}

Formula rename_walk(const Formula& f, std::map<std::string, std::string> env, std::set<std::string>& used) {
  switch (f.op) {
    case Conn::Atom:
      return f.atom == AtomKind::Eq ? Formula::Eq(apply_env(f.lhs, env), apply_env(f.rhs, env))
                                    : Formula::In(apply_env(f.lhs, env), apply_env(f.rhs, env));
    case Conn::Pred: {
      std::vector<Term> args;
      args.reserve(f.args.size());
      for (const Term& t : f.args) args.push_back(apply_env(t, env));
      return Formula::Pred(f.name, std::move(args));
    }
    case Conn::All:
    case Conn::Ex: {
      std::string nn = fresh_name(f.name, used);
      used.insert(nn);
      env[f.name] = nn;
      Formula body = rename_walk(f.kids[0], env, used);
      return f.op == Conn::All ? Formula::All(nn, std::move(body)) : Formula::Ex(nn, std::move(body));
    }
    default: {
      Formula out;
      out.op = f.op;
      out.kids.reserve(f.kids.size());
      for (const Formula& k : f.kids) out.kids.push_back(rename_walk(k, env, used));
      return out;
    }
  }
}

/// Substitutes terms for free variables. Callers must have renamed the
/// target's binders away from the substituted terms (no capture check).
Formula substitute(const Formula& f, std::map<std::string, Term> sub) {
  auto subst_term = [&](const Term& t) {
    auto it = sub.find(t.var);
    if (it == sub.end()) return t;
    return Term{it->second.var, t.labels + it->second.labels};
  };
  switch (f.op) {
    case Conn::Atom:
      return f.atom == AtomKind::Eq ? Formula::Eq(subst_term(f.lhs), subst_term(f.rhs))
                                    : Formula::In(subst_term(f.lhs), subst_term(f.rhs));
    case Conn::Pred: {
      std::vector<Term> args;
      args.reserve(f.args.size());
      for (const Term& t : f.args) args.push_back(subst_term(t));
      return Formula::Pred(f.name, std::move(args));
    }
    case Conn::All:
    case Conn::Ex: {
      std::map<std::string, Term> inner = sub;
      inner.erase(f.name);
      Formula body = substitute(f.kids[0], std::move(inner));
      return f.op == Conn::All ? Formula::All(f.name, std::move(body)) : Formula::Ex(f.name, std::move(body));
    }
    default: {
      Formula out;
      out.op = f.op;
      out.kids.reserve(f.kids.size());
      for (const Formula& k : f.kids) out.kids.push_back(substitute(k, sub));
      return out;
    }
  }
}

Formula expand_walk(const Formula& f, const DefinitionTable& defs, std::set<std::string>& used) {
  switch (f.op) {
    case Conn::Atom:
      return f;
    case Conn::Pred: {
      const Definition* d = defs.find(f.name);
      if (!d) throw semantic_error("missing definition: " + f.name);
      if (d->params.size() != f.args.size())
        throw semantic_error("arity mismatch expanding '" + f.name + "'");
      // rename template binders apart from everything seen so far
      std::set<std::string> avoid = used;
      for (const std::string& p : d->params) avoid.insert(p);
      for (const Term& t : f.args) avoid.insert(t.var);
      Formula body = rename_walk(d->body, {}, avoid);
      used.insert(avoid.begin(), avoid.end());
      std::map<std::string, Term> sub;
      for (size_t i = 0; i < d->params.size(); ++i) sub[d->params[i]] = f.args[i];
      return substitute(body, std::move(sub));
    }
    case Conn::All:
    case Conn::Ex: {
      Formula body = expand_walk(f.kids[0], defs, used);
      return f.op == Conn::All ? Formula::All(f.name, std::move(body)) : Formula::Ex(f.name, std::move(body));
    }
    default: {
      Formula out;
      out.op = f.op;
      out.kids.reserve(f.kids.size());
      for (const Formula& k : f.kids) out.kids.push_back(expand_walk(k, defs, used));
      return out;
    }
  }
}

Formula flatten_walk(const Formula& f, std::set<std::string>& used) {
  switch (f.op) {
    case Conn::Atom: {
      if (f.lhs.labels <= 1 && f.rhs.labels <= 1) return f;
      std::vector<Formula> eqs;
      std::vector<std::string> fresh;
      auto reduce = [&](Term t) {
        while (t.labels > 1) {
          std::string v = fresh_name("v", used);
          used.insert(v);
          fresh.push_back(v);
          eqs.push_back(Formula::Eq(Term{t.var, 1}, Term{v, 0}));
          t = Term{v, t.labels - 1};
        }
        return t;
      };
      Term l = reduce(f.lhs);
      Term r = reduce(f.rhs);
      Formula core = f.atom == AtomKind::Eq ? Formula::Eq(l, r) : Formula::In(l, r);
      Formula body = std::move(eqs[0]);
      for (size_t i = 1; i < eqs.size(); ++i) body = Formula::And(std::move(body), std::move(eqs[i]));
      body = Formula::And(std::move(body), std::move(core));
      for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) body = Formula::Ex(*it, std::move(body));
      return body;
    }
    case Conn::Pred:
      throw semantic_error("flatten_terms requires primitive atoms; expand definitions first");
    case Conn::All:
    case Conn::Ex: {
      Formula body = flatten_walk(f.kids[0], used);
      return f.op == Conn::All ? Formula::All(f.name, std::move(body)) : Formula::Ex(f.name, std::move(body));
    }
    default: {
      Formula out;
      out.op = f.op;
      out.kids.reserve(f.kids.size());
      for (const Formula& k : f.kids) out.kids.push_back(flatten_walk(k, used));
      return out;
    }
  }
}

}  // namespace

Formula expand_definitions(const Formula& f, const DefinitionTable& defs) {
  std::set<std::string> used = all_vars(f);
  return expand_walk(f, defs, used);
}

Formula flatten_terms(const Formula& f) {
  std::set<std::string> used = all_vars(f);
  return flatten_walk(f, used);
}

Formula rename_apart(const Formula& f) {
  std::set<std::string> used = free_vars(f);
  return rename_walk(f, {}, used);
}

Formula normalize(const Formula& f, const DefinitionTable& defs) {
  return rename_apart(flatten_terms(expand_definitions(f, defs)));
}

// ---- alpha equivalence ----

namespace {

bool term_alpha(const Term& s, const Term& t, const std::map<std::string, int>& m1,
                const std::map<std::string, int>& m2) {
  if (s.labels != t.labels) return false;
  auto i1 = m1.find(s.var);
  auto i2 = m2.find(t.var);
  if (i1 != m1.end() || i2 != m2.end())
    return i1 != m1.end() && i2 != m2.end() && i1->second == i2->second;
  return s.var == t.var;
}

bool alpha_rec(const Formula& a, const Formula& b, std::map<std::string, int> m1,
               std::map<std::string, int> m2, int depth) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Conn::Atom:
      return a.atom == b.atom && term_alpha(a.lhs, b.lhs, m1, m2) && term_alpha(a.rhs, b.rhs, m1, m2);
    case Conn::Pred:
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!term_alpha(a.args[i], b.args[i], m1, m2)) return false;
      return true;
    case Conn::All:
    case Conn::Ex:
      m1[a.name] = depth;
      m2[b.name] = depth;
      return alpha_rec(a.kids[0], b.kids[0], std::move(m1), std::move(m2), depth + 1);
    default:
      if (a.kids.size() != b.kids.size()) return false;
      for (size_t i = 0; i < a.kids.size(); ++i)
        if (!alpha_rec(a.kids[i], b.kids[i], m1, m2, depth)) return false;
      return true;
  }
}

}  // namespace

bool alpha_eq(const Formula& f, const Formula& g) { return alpha_rec(f, g, {}, {}, 0); }

namespace {

void canonical_walk(const Formula& f, std::map<std::string, std::string>& m) {
  auto see = [&](const std::string& v) {
    if (!m.count(v)) m[v] = "_c" + std::to_string(m.size());
  };
  switch (f.op) {
    case Conn::Atom:
      see(f.lhs.var);
      see(f.rhs.var);
      break;
    case Conn::Pred:
      for (const Term& t : f.args) see(t.var);
      break;
    case Conn::All:
    case Conn::Ex:
      see(f.name);
      canonical_walk(f.kids[0], m);
      break;
    default:
      for (const Formula& k : f.kids) canonical_walk(k, m);
  }
}

Formula apply_name_map(const Formula& f, const std::map<std::string, std::string>& m) {
  auto ren = [&](const Term& t) {
    auto it = m.find(t.var);
    return it == m.end() ? t : Term{it->second, t.labels};
  };
  switch (f.op) {
    case Conn::Atom:
      return f.atom == AtomKind::Eq ? Formula::Eq(ren(f.lhs), ren(f.rhs)) : Formula::In(ren(f.lhs), ren(f.rhs));
    case Conn::Pred: {
      std::vector<Term> args;
      for (const Term& t : f.args) args.push_back(ren(t));
      return Formula::Pred(f.name, std::move(args));
    }
    case Conn::All:
    case Conn::Ex: {
      auto it = m.find(f.name);
      std::string nn = it == m.end() ? f.name : it->second;
      Formula body = apply_name_map(f.kids[0], m);
      return f.op == Conn::All ? Formula::All(nn, std::move(body)) : Formula::Ex(nn, std::move(body));
    }
    default: {
      Formula out;
      out.op = f.op;
      for (const Formula& k : f.kids) out.kids.push_back(apply_name_map(k, m));
      return out;
    }
  }
}

}  // namespace

Formula canonical_vars(const Formula& f) {
  std::map<std::string, std::string> m;
  canonical_walk(f, m);
  return apply_name_map(f, m);
}

// ---- JSON AST ----

json to_json(const Term& t) {
  json j = {{"op", "var"}, {"name", t.var}};
  for (int i = 0; i < t.labels; ++i) j = json{{"op", "label"}, {"arg", std::move(j)}};
  return j;
}

json to_json(const Formula& f) {
  switch (f.op) {
    case Conn::Atom:
      return {{"op", f.atom == AtomKind::Eq ? "eq" : "in"}, {"lhs", to_json(f.lhs)}, {"rhs", to_json(f.rhs)}};
    case Conn::Pred: {
      json args = json::array();
      for (const Term& t : f.args) args.push_back(to_json(t));
      return {{"op", "pred"}, {"name", f.name}, {"args", std::move(args)}};
    }
    case Conn::Not:
      return {{"op", "not"}, {"arg", to_json(f.kids[0])}};
    case Conn::And:
      return {{"op", "and"}, {"lhs", to_json(f.kids[0])}, {"rhs", to_json(f.kids[1])}};
    case Conn::Or:
      return {{"op", "or"}, {"lhs", to_json(f.kids[0])}, {"rhs", to_json(f.kids[1])}};
    case Conn::Imp:
      return {{"op", "imp"}, {"lhs", to_json(f.kids[0])}, {"rhs", to_json(f.kids[1])}};
    case Conn::Iff:
      return {{"op", "iff"}, {"lhs", to_json(f.kids[0])}, {"rhs", to_json(f.kids[1])}};
    case Conn::All:
    case Conn::Ex:
      return {{"op", f.op == Conn::All ? "all" : "ex"}, {"var", f.name}, {"body", to_json(f.kids[0])}};
  }
  throw semantic_error("unreachable formula op");
}

}  // namespace lmst
