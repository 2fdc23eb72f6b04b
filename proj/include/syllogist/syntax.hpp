#pragma once

// Abstract syntax of quantifier-free set-theoretic formulas, with an ASCII
// concrete syntax:
//
//   term    := var | '0' | '{' term (',' term)* '}'
//            | ('un'|'int'|'diff'|'cross'|'ucross') '(' term ',' term ')'
//            | ('pow'|'Un'|'In'|'dun') '(' term ')'
//   atom    := term ('in' | 'notin' | '=' | '!=' | 'sub') term | 'Finite' '(' term ')'
//   formula := atom | '!' formula | formula ('&' | '|' | '->' | '<->') formula | '(' formula ')'
//
// Precedence, tightest first: '!', '&', '|', '->', '<->'. '&', '|' and '<->'
// associate to the left, '->' to the right. '#' starts a line comment.

#include <algorithm>
#include <cctype>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syllogist/errors.hpp"

namespace syllogist {

enum class TermKind { Var, Empty, Union, Inter, Diff, Cross, UCross, Pow, BigUnion, BigInter, DisjUnion, Display };

inline bool is_reserved_word(std::string_view w) {
  static constexpr std::string_view kWords[] = {"un",  "int", "diff", "cross", "ucross", "pow",  "Un",
                                                "In",  "dun", "in",   "notin", "sub",    "Finite"};
  return std::find(std::begin(kWords), std::end(kWords), w) != std::end(kWords);
}

inline bool is_valid_var_name(std::string_view w) {
  if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
  for (char c : w)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return !is_reserved_word(w);
}

class Term {
 public:
  static Term var(std::string name) {
    if (!is_valid_var_name(name)) throw Error("invalid variable name '" + name + "'");
    return Term(TermKind::Var, std::move(name), {});
  }
  static Term empty() { return Term(TermKind::Empty, {}, {}); }
  static Term un(Term a, Term b) { return Term(TermKind::Union, {}, {std::move(a), std::move(b)}); }
  static Term inter(Term a, Term b) { return Term(TermKind::Inter, {}, {std::move(a), std::move(b)}); }
  static Term diff(Term a, Term b) { return Term(TermKind::Diff, {}, {std::move(a), std::move(b)}); }
  static Term cross(Term a, Term b) { return Term(TermKind::Cross, {}, {std::move(a), std::move(b)}); }
  static Term ucross(Term a, Term b) { return Term(TermKind::UCross, {}, {std::move(a), std::move(b)}); }
  static Term pow(Term a) { return Term(TermKind::Pow, {}, {std::move(a)}); }
  static Term big_union(Term a) { return Term(TermKind::BigUnion, {}, {std::move(a)}); }
  static Term big_inter(Term a) { return Term(TermKind::BigInter, {}, {std::move(a)}); }
  static Term dun(Term a) { return Term(TermKind::DisjUnion, {}, {std::move(a)}); }
  static Term display(std::vector<Term> items) {
    if (items.empty()) throw Error("set display needs at least one member; write 0 for the empty set");
    return Term(TermKind::Display, {}, std::move(items));
  }
  /// Builds any non-leaf kind from its arguments.
  static Term make(TermKind kind, std::vector<Term> args) {
    if (kind == TermKind::Var || kind == TermKind::Empty) throw Error("Term::make: leaf kind");
    if (kind == TermKind::Display) return display(std::move(args));
    std::size_t want = arity(kind);
    if (args.size() != want) throw Error("Term::make: wrong arity");
    return Term(kind, {}, std::move(args));
  }

  static std::size_t arity(TermKind kind) {
    switch (kind) {
      case TermKind::Var:
      case TermKind::Empty: return 0;
      case TermKind::Pow:
      case TermKind::BigUnion:
      case TermKind::BigInter:
      case TermKind::DisjUnion: return 1;
      case TermKind::Display: return SIZE_MAX;
      default: return 2;
    }
  }

  TermKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  bool is_leaf() const { return kind() == TermKind::Var || kind() == TermKind::Empty; }
  /// Identity of the shared node; stable for the lifetime of the term.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    return a.kind() == b.kind() && a.name() == b.name() &&
           std::equal(a.args().begin(), a.args().end(), b.args().begin(), b.args().end());
  }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::vector<Term> args;
  };
  Term(TermKind kind, std::string name, std::vector<Term> args)
      : node_(std::make_shared<Node>(Node{kind, std::move(name), std::move(args)})) {}
  std::shared_ptr<const Node> node_;
};

enum class FormulaKind { Mem, Eq, Sub, Finite, Not, And, Or, Implies, Iff };

class Formula {
 public:
  static Formula mem(Term a, Term b) { return Formula(FormulaKind::Mem, {std::move(a), std::move(b)}, {}); }
  static Formula eq(Term a, Term b) { return Formula(FormulaKind::Eq, {std::move(a), std::move(b)}, {}); }
  static Formula sub(Term a, Term b) { return Formula(FormulaKind::Sub, {std::move(a), std::move(b)}, {}); }
  static Formula finite(Term a) { return Formula(FormulaKind::Finite, {std::move(a)}, {}); }
  static Formula negate(Formula f) { return Formula(FormulaKind::Not, {}, {std::move(f)}); }
  static Formula conj(Formula a, Formula b) { return Formula(FormulaKind::And, {}, {std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return Formula(FormulaKind::Or, {}, {std::move(a), std::move(b)}); }
  static Formula implies(Formula a, Formula b) {
    return Formula(FormulaKind::Implies, {}, {std::move(a), std::move(b)});
  }
  static Formula iff(Formula a, Formula b) { return Formula(FormulaKind::Iff, {}, {std::move(a), std::move(b)}); }

  /// Left-nested conjunction of a non-empty list.
  static Formula conj_all(std::span<const Formula> items) {
    if (items.empty()) throw Error("conj_all: empty conjunction");
    Formula acc = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) acc = conj(acc, items[i]);
    return acc;
  }
  static Formula disj_all(std::span<const Formula> items) {
    if (items.empty()) throw Error("disj_all: empty disjunction");
    Formula acc = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) acc = disj(acc, items[i]);
    return acc;
  }

  FormulaKind kind() const { return node_->kind; }
  bool is_atom() const { return kind() <= FormulaKind::Finite; }
  std::span<const Term> terms() const { return node_->terms; }
  std::span<const Formula> subs() const { return node_->subs; }
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    return a.kind() == b.kind() &&
           std::equal(a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end()) &&
           std::equal(a.subs().begin(), a.subs().end(), b.subs().begin(), b.subs().end());
  }

 private:
  struct Node {
    FormulaKind kind;
    std::vector<Term> terms;
    std::vector<Formula> subs;
  };
  Formula(FormulaKind kind, std::vector<Term> terms, std::vector<Formula> subs)
      : node_(std::make_shared<Node>(Node{kind, std::move(terms), std::move(subs)})) {}
  std::shared_ptr<const Node> node_;
};

/// Top-level conjuncts of `f` (an And tree is flattened left to right).
inline std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.kind() == FormulaKind::And) {
      stack.push_back(g.subs()[1]);
      stack.push_back(g.subs()[0]);
    } else {
      out.push_back(g);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variables and sizes.

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind() == TermKind::Var) out.insert(t.name());
  for (const auto& a : t.args()) collect_vars(a, out);
}

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms()) collect_vars(t, out);
  for (const auto& g : f.subs()) collect_vars(g, out);
}

inline std::set<std::string> vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

inline std::set<std::string> vars(const Formula& f) {
  std::set<std::string> out;
  collect_vars(f, out);
  return out;
}

/// Nesting depth of operators; variables and 0 have depth 0.
inline std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args()) d = std::max(d, term_depth(a) + 1);
  return t.is_leaf() ? 0 : std::max<std::size_t>(d, 1);
}

/// Largest term depth occurring in `f`.
inline std::size_t max_term_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& t : f.terms()) d = std::max(d, term_depth(t));
  for (const auto& g : f.subs()) d = std::max(d, max_term_depth(g));
  return d;
}

// ---------------------------------------------------------------------------
// Printing.

inline const char* term_keyword(TermKind k) {
  switch (k) {
    case TermKind::Union: return "un";
    case TermKind::Inter: return "int";
    case TermKind::Diff: return "diff";
    case TermKind::Cross: return "cross";
    case TermKind::UCross: return "ucross";
    case TermKind::Pow: return "pow";
    case TermKind::BigUnion: return "Un";
    case TermKind::BigInter: return "In";
    case TermKind::DisjUnion: return "dun";
    default: return "";
  }
}

inline void print_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: out += t.name(); return;
    case TermKind::Empty: out += '0'; return;
    case TermKind::Display: {
      out += '{';
      bool first = true;
      for (const auto& a : t.args()) {
        if (!first) out += ',';
        first = false;
        print_term(a, out);
      }
      out += '}';
      return;
    }
    default: {
      out += term_keyword(t.kind());
      out += '(';
      bool first = true;
      for (const auto& a : t.args()) {
        if (!first) out += ',';
        first = false;
        print_term(a, out);
      }
      out += ')';
    }
  }
}

inline std::string print_term(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

namespace detail {
// Higher binds tighter.
inline int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    default: return 5;
  }
}

inline const char* connective(FormulaKind k) {
  switch (k) {
    case FormulaKind::And: return " & ";
    case FormulaKind::Or: return " | ";
    case FormulaKind::Implies: return " -> ";
    case FormulaKind::Iff: return " <-> ";
    default: return "";
  }
}

inline void print_formula(const Formula& f, std::string& out);

inline void print_operand(const Formula& child, int parent_prec, bool needs_parens_on_tie, std::string& out) {
  int p = precedence(child.kind());
  bool parens = p < parent_prec || (p == parent_prec && needs_parens_on_tie);
  if (parens) out += '(';
  print_formula(child, out);
  if (parens) out += ')';
}

inline void print_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Mem:
    case FormulaKind::Eq:
    case FormulaKind::Sub: {
      print_term(f.terms()[0], out);
      out += f.kind() == FormulaKind::Mem ? " in " : f.kind() == FormulaKind::Eq ? " = " : " sub ";
      print_term(f.terms()[1], out);
      return;
    }
    case FormulaKind::Finite:
      out += "Finite(";
      print_term(f.terms()[0], out);
      out += ')';
      return;
    case FormulaKind::Not: {
      const Formula& g = f.subs()[0];
      out += '!';
      bool parens = g.kind() != FormulaKind::Not && g.kind() != FormulaKind::Finite;
      if (parens) out += '(';
      print_formula(g, out);
      if (parens) out += ')';
      return;
    }
    default: {
      int prec = precedence(f.kind());
      bool right_assoc = f.kind() == FormulaKind::Implies;
      print_operand(f.subs()[0], prec, right_assoc, out);
      out += connective(f.kind());
      print_operand(f.subs()[1], prec, !right_assoc, out);
    }
  }
}
}  // namespace detail

inline std::string print_formula(const Formula& f) {
  std::string out;
  detail::print_formula(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

enum class Tok { Ident, Zero, LBrace, RBrace, LParen, RParen, Comma, Eq, Neq, Bang, And, Or, Arrow, DArrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      std::size_t l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = src_[pos_];
      auto single = [&](Tok k) {
        advance();
        out.push_back({k, std::string(1, ch), l, c});
      };
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '\''))
          advance();
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), l, c});
      } else if (ch == '0') {
        single(Tok::Zero);
      } else if (ch == '{') {
        single(Tok::LBrace);
      } else if (ch == '}') {
        single(Tok::RBrace);
      } else if (ch == '(') {
        single(Tok::LParen);
      } else if (ch == ')') {
        single(Tok::RParen);
      } else if (ch == ',') {
        single(Tok::Comma);
      } else if (ch == '=') {
        single(Tok::Eq);
      } else if (ch == '&') {
        single(Tok::And);
      } else if (ch == '|') {
        single(Tok::Or);
      } else if (ch == '!') {
        advance();
        if (pos_ < src_.size() && src_[pos_] == '=') {
          advance();
          out.push_back({Tok::Neq, "!=", l, c});
        } else {
          out.push_back({Tok::Bang, "!", l, c});
        }
      } else if (src_.substr(pos_, 2) == "->") {
        advance(), advance();
        out.push_back({Tok::Arrow, "->", l, c});
      } else if (src_.substr(pos_, 3) == "<->") {
        advance(), advance(), advance();
        out.push_back({Tok::DArrow, "<->", l, c});
      } else {
        throw SyntaxError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      char ch = src_[pos_];
      if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula formula_eof() {
    Formula f = iff();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_eof() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && peek().text == w; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line,
                      t.column);
  }
  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    take();
  }

  Formula iff() {
    Formula lhs = implies();
    while (at(Tok::DArrow)) {
      take();
      lhs = Formula::iff(lhs, implies());
    }
    return lhs;
  }

  Formula implies() {
    Formula lhs = disj();
    if (at(Tok::Arrow)) {
      take();
      return Formula::implies(lhs, implies());
    }
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (at(Tok::Or)) {
      take();
      lhs = Formula::disj(lhs, conj());
    }
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (at(Tok::And)) {
      take();
      lhs = Formula::conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    if (at(Tok::Bang)) {
      take();
      return Formula::negate(unary());
    }
    if (at(Tok::LParen)) {
      // Either a parenthesized formula or an atom; terms never start with '('.
      take();
      Formula f = iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    return atom();
  }

  Formula atom() {
    if (at_word("Finite") && peek(1).kind == Tok::LParen) {
      take();
      take();
      Term t = term();
      expect(Tok::RParen, "')'");
      return Formula::finite(t);
    }
    Term lhs = term();
    if (at(Tok::Eq)) {
      take();
      return Formula::eq(lhs, term());
    }
    if (at(Tok::Neq)) {
      take();
      return Formula::negate(Formula::eq(lhs, term()));
    }
    if (at_word("in")) {
      take();
      return Formula::mem(lhs, term());
    }
    if (at_word("notin")) {
      take();
      return Formula::negate(Formula::mem(lhs, term()));
    }
    if (at_word("sub")) {
      take();
      return Formula::sub(lhs, term());
    }
    fail("expected 'in', 'notin', '=', '!=' or 'sub'");
  }

  Term term() {
    if (at(Tok::Zero)) {
      take();
      return Term::empty();
    }
    if (at(Tok::LBrace)) {
      take();
      if (at(Tok::RBrace)) fail("empty set display; write 0 for the empty set");
      std::vector<Term> items{term()};
      while (at(Tok::Comma)) {
        take();
        items.push_back(term());
      }
      expect(Tok::RBrace, "'}'");
      return Term::display(std::move(items));
    }
    if (!at(Tok::Ident)) fail("expected a term");
    const std::string word = peek().text;
    static const std::pair<std::string_view, TermKind> kOps[] = {
        {"un", TermKind::Union},      {"int", TermKind::Inter},    {"diff", TermKind::Diff},
        {"cross", TermKind::Cross},   {"ucross", TermKind::UCross}, {"pow", TermKind::Pow},
        {"Un", TermKind::BigUnion},   {"In", TermKind::BigInter},  {"dun", TermKind::DisjUnion}};
    for (const auto& [kw, kind] : kOps) {
      if (word != kw) continue;
      take();
      expect(Tok::LParen, "'('");
      std::vector<Term> args{term()};
      for (std::size_t i = 1; i < Term::arity(kind); ++i) {
        expect(Tok::Comma, "','");
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
      return Term::make(kind, std::move(args));
    }
    if (!is_valid_var_name(word)) fail("reserved word used as a variable");
    take();
    return Term::var(word);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  return detail::Parser(detail::Lexer(text).run()).formula_eof();
}

inline Term parse_term(std::string_view text) { return detail::Parser(detail::Lexer(text).run()).term_eof(); }

// ---------------------------------------------------------------------------
// Fragments.

enum class FragmentTag { MLS, MLSP, MLSC, MLSCNOTORD, MLSCNOTORD_DU, S_FULL };

inline const char* to_string(FragmentTag t) {
  switch (t) {
    case FragmentTag::MLS: return "MLS";
    case FragmentTag::MLSP: return "MLSP";
    case FragmentTag::MLSC: return "MLSC";
    case FragmentTag::MLSCNOTORD: return "MLSCNOTORD";
    case FragmentTag::MLSCNOTORD_DU: return "MLSCNOTORD_DU";
    default: return "S_FULL";
  }
}

/// Inclusion between fragments (a partial order: MLSP, MLSC and MLSCNOTORD
/// are pairwise incomparable).
inline bool fragment_leq(FragmentTag a, FragmentTag b) {
  if (a == b || a == FragmentTag::MLS || b == FragmentTag::S_FULL) return true;
  return a == FragmentTag::MLSCNOTORD && b == FragmentTag::MLSCNOTORD_DU;
}

namespace detail {
struct OperatorUse {
  bool pow = false, cross = false, ucross = false, dun = false, other = false;
};

inline void scan(const Term& t, OperatorUse& u) {
  switch (t.kind()) {
    case TermKind::Pow: u.pow = true; break;
    case TermKind::Cross: u.cross = true; break;
    case TermKind::UCross: u.ucross = true; break;
    case TermKind::DisjUnion: u.dun = true; break;
    case TermKind::BigUnion:
    case TermKind::BigInter:
    case TermKind::Display: u.other = true; break;
    default: break;
  }
  for (const auto& a : t.args()) scan(a, u);
}

inline void scan(const Formula& f, OperatorUse& u) {
  if (f.kind() == FormulaKind::Finite) u.other = true;
  for (const auto& t : f.terms()) scan(t, u);
  for (const auto& g : f.subs()) scan(g, u);
}
}  // namespace detail

/// Least listed fragment whose operators cover those occurring in `f`.
inline FragmentTag classify_fragment(const Formula& f) {
  detail::OperatorUse u;
  detail::scan(f, u);
  if (u.other) return FragmentTag::S_FULL;
  int extensions = int(u.pow) + int(u.cross) + int(u.ucross || u.dun);
  if (extensions > 1) return FragmentTag::S_FULL;
  if (u.pow) return FragmentTag::MLSP;
  if (u.cross) return FragmentTag::MLSC;
  if (u.dun) return FragmentTag::MLSCNOTORD_DU;
  if (u.ucross) return FragmentTag::MLSCNOTORD;
  return FragmentTag::MLS;
}

}  // namespace syllogist
