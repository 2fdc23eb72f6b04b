#pragma once

// Reduction of arbitrary formulas to normalized conjunctions: disjunctive
// normal form, naming of compound subterms by fresh variables, and the
// simplification rules
//
//   (s1) x = y        ~>  x = y u y
//   (s2) x !sub y     ~>  z' = x \ y  &  z' != 0
//   (s3) 0            ~>  y0, plus y0 = y0 \ y0
//   (s4) x = y n z    ~>  y' = y \ z  &  x = y \ y'
//   (s5) x sub y      ~>  y = x u y
//   (s6) x != y       ~>  x in z'  &  y notin z'
//   (s7) x notin y    ~>  x in z'  &  z' = z' \ y
//
// applied in the fixed order s3, s4, s5, s1, s2, s6, s7 until nothing changes.
// Every step preserves satisfiability, and models of the output restrict to
// models of the input.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "syllogist/caps.hpp"
#include "syllogist/syntax.hpp"

namespace syllogist {

/// Supplies variable names `_v1`, `_v2`, ... that avoid a reserved set.
class FreshVarSupply {
 public:
  FreshVarSupply() = default;
  explicit FreshVarSupply(std::set<std::string> reserved, std::string prefix = "_v")
      : reserved_(std::move(reserved)), prefix_(std::move(prefix)) {}

  std::string next() {
    std::string name;
    do {
      name = prefix_ + std::to_string(++counter_);
    } while (reserved_.count(name));
    return name;
  }

  void reserve(const std::string& name) { reserved_.insert(name); }
  std::size_t issued() const { return counter_; }

 private:
  std::set<std::string> reserved_;
  std::string prefix_ = "_v";
  std::size_t counter_ = 0;
};

/// A variable or the constant 0 (empty name).
struct Operand {
  std::string name;

  static Operand empty() { return {}; }
  static Operand var(std::string n) { return {std::move(n)}; }
  bool is_empty() const { return name.empty(); }
  Term to_term() const { return is_empty() ? Term::empty() : Term::var(name); }
  friend bool operator==(const Operand&, const Operand&) = default;
};

enum class LiteralKind {
  // lhs = op(args)
  Union, Inter, Diff, Cross, UCross, Pow, BigUnion, BigInter, DisjUnion, Display,
  // binary relations between lhs and args[0]
  Equal, NotEqual, Member, NotMember, Subset, NotSubset
};

/// A flat literal: every argument is a variable or 0.
struct Literal {
  LiteralKind kind;
  Operand lhs;
  std::vector<Operand> args;

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline bool is_definition(LiteralKind k) { return k <= LiteralKind::Display; }

inline TermKind term_kind_of(LiteralKind k) {
  switch (k) {
    case LiteralKind::Union: return TermKind::Union;
    case LiteralKind::Inter: return TermKind::Inter;
    case LiteralKind::Diff: return TermKind::Diff;
    case LiteralKind::Cross: return TermKind::Cross;
    case LiteralKind::UCross: return TermKind::UCross;
    case LiteralKind::Pow: return TermKind::Pow;
    case LiteralKind::BigUnion: return TermKind::BigUnion;
    case LiteralKind::BigInter: return TermKind::BigInter;
    case LiteralKind::DisjUnion: return TermKind::DisjUnion;
    case LiteralKind::Display: return TermKind::Display;
    default: throw Error("term_kind_of: not a definition");
  }
}

inline LiteralKind literal_kind_of(TermKind k) {
  switch (k) {
    case TermKind::Union: return LiteralKind::Union;
    case TermKind::Inter: return LiteralKind::Inter;
    case TermKind::Diff: return LiteralKind::Diff;
    case TermKind::Cross: return LiteralKind::Cross;
    case TermKind::UCross: return LiteralKind::UCross;
    case TermKind::Pow: return LiteralKind::Pow;
    case TermKind::BigUnion: return LiteralKind::BigUnion;
    case TermKind::BigInter: return LiteralKind::BigInter;
    case TermKind::DisjUnion: return LiteralKind::DisjUnion;
    case TermKind::Display: return LiteralKind::Display;
    default: throw Error("literal_kind_of: leaf term");
  }
}

inline Formula to_formula(const Literal& lit) {
  Term lhs = lit.lhs.to_term();
  if (is_definition(lit.kind)) {
    std::vector<Term> args;
    for (const auto& a : lit.args) args.push_back(a.to_term());
    return Formula::eq(lhs, Term::make(term_kind_of(lit.kind), std::move(args)));
  }
  Term rhs = lit.args.at(0).to_term();
  switch (lit.kind) {
    case LiteralKind::Equal: return Formula::eq(lhs, rhs);
    case LiteralKind::NotEqual: return Formula::negate(Formula::eq(lhs, rhs));
    case LiteralKind::Member: return Formula::mem(lhs, rhs);
    case LiteralKind::NotMember: return Formula::negate(Formula::mem(lhs, rhs));
    case LiteralKind::Subset: return Formula::sub(lhs, rhs);
    default: return Formula::negate(Formula::sub(lhs, rhs));
  }
}

/// One literal in the concrete syntax, using `!=` and `notin` for negations.
inline std::string to_string(const Literal& lit) {
  auto op = [](const Operand& o) { return o.is_empty() ? std::string("0") : o.name; };
  switch (lit.kind) {
    case LiteralKind::NotEqual: return op(lit.lhs) + " != " + op(lit.args[0]);
    case LiteralKind::NotMember: return op(lit.lhs) + " notin " + op(lit.args[0]);
    default: return print_formula(to_formula(lit));
  }
}

inline Formula to_formula(const std::vector<Literal>& lits) {
  std::vector<Formula> parts;
  for (const auto& l : lits) parts.push_back(to_formula(l));
  return Formula::conj_all(parts);
}

/// Literal shapes allowed in a normalized conjunction.
inline bool is_normalized_shape(const Literal& lit) {
  switch (lit.kind) {
    case LiteralKind::Inter:
    case LiteralKind::Equal:
    case LiteralKind::NotEqual:
    case LiteralKind::NotMember:
    case LiteralKind::Subset:
    case LiteralKind::NotSubset: return false;
    default: break;
  }
  if (lit.lhs.is_empty()) return false;
  if (lit.kind == LiteralKind::Display && lit.args.empty()) return false;
  for (const auto& a : lit.args)
    if (a.is_empty()) return false;
  return true;
}

struct NormalizedConjunction {
  std::vector<Literal> literals;

  Formula to_formula() const { return syllogist::to_formula(literals); }
  std::set<std::string> vars() const { return syllogist::vars(to_formula()); }
};

/// Conjunctions of possibly negated atoms.
using Conjunction = std::vector<Formula>;

// ---------------------------------------------------------------------------
// Disjunctive normal form.

namespace detail {
inline void check_dnf_size(std::size_t n) {
  if (n > current_caps().dnf_disjuncts)
    throw SizeBlowup("DNF has " + std::to_string(n) + " disjuncts, cap is " +
                     std::to_string(current_caps().dnf_disjuncts));
}

inline std::vector<Conjunction> dnf_product(const std::vector<Conjunction>& a, const std::vector<Conjunction>& b) {
  check_dnf_size(a.size() * b.size());
  std::vector<Conjunction> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      Conjunction c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  return out;
}

inline std::vector<Conjunction> dnf_concat(std::vector<Conjunction> a, const std::vector<Conjunction>& b) {
  check_dnf_size(a.size() + b.size());
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::vector<Conjunction> dnf(const Formula& f, bool positive) {
  auto subs = f.subs();
  switch (f.kind()) {
    case FormulaKind::Not: return dnf(subs[0], !positive);
    case FormulaKind::And:
      return positive ? dnf_product(dnf(subs[0], true), dnf(subs[1], true))
                      : dnf_concat(dnf(subs[0], false), dnf(subs[1], false));
    case FormulaKind::Or:
      return positive ? dnf_concat(dnf(subs[0], true), dnf(subs[1], true))
                      : dnf_product(dnf(subs[0], false), dnf(subs[1], false));
    case FormulaKind::Implies:
      return positive ? dnf_concat(dnf(subs[0], false), dnf(subs[1], true))
                      : dnf_product(dnf(subs[0], true), dnf(subs[1], false));
    case FormulaKind::Iff:
      return positive ? dnf_concat(dnf_product(dnf(subs[0], true), dnf(subs[1], true)),
                                   dnf_product(dnf(subs[0], false), dnf(subs[1], false)))
                      : dnf_concat(dnf_product(dnf(subs[0], true), dnf(subs[1], false)),
                                   dnf_product(dnf(subs[0], false), dnf(subs[1], true)));
    default: return {{positive ? f : Formula::negate(f)}};
  }
}
}  // namespace detail

/// Disjuncts whose disjunction is equivalent to `f`; each is a conjunction of
/// atoms and negated atoms.
inline std::vector<Conjunction> to_dnf(const Formula& f) { return detail::dnf(f, true); }

// ---------------------------------------------------------------------------
// Flattening.

namespace detail {
class Flattener {
 public:
  Flattener(FreshVarSupply& supply, std::vector<Literal>& out) : supply_(supply), out_(out) {}

  Operand name(const Term& t) {
    if (t.kind() == TermKind::Var) return Operand::var(t.name());
    if (t.kind() == TermKind::Empty) return Operand::empty();
    std::string key = print_term(t);
    if (auto it = named_.find(key); it != named_.end()) return Operand::var(it->second);
    Literal def = define(Operand{}, t);
    std::string fresh = supply_.next();
    def.lhs = Operand::var(fresh);
    named_.emplace(std::move(key), fresh);
    pending_.push_back(std::move(def));
    return Operand::var(fresh);
  }

  /// lhs = t for compound t, naming the arguments of t.
  Literal define(Operand lhs, const Term& t) {
    std::vector<Operand> args;
    for (const auto& a : t.args()) args.push_back(name(a));
    return Literal{literal_kind_of(t.kind()), std::move(lhs), std::move(args)};
  }

  void literal(const Formula& lit) {
    bool positive = lit.kind() != FormulaKind::Not;
    const Formula& atom = positive ? lit : lit.subs()[0];
    if (!atom.is_atom()) throw Error("flatten: not a literal: " + print_formula(lit));
    if (atom.kind() == FormulaKind::Finite) throw FiniteUnsupported();
    const Term& s = atom.terms()[0];
    const Term& t = atom.terms()[1];
    Literal main;
    switch (atom.kind()) {
      case FormulaKind::Mem:
        main = {positive ? LiteralKind::Member : LiteralKind::NotMember, name(s), {name(t)}};
        break;
      case FormulaKind::Sub:
        main = {positive ? LiteralKind::Subset : LiteralKind::NotSubset, name(s), {name(t)}};
        break;
      default:
        if (!positive) {
          main = {LiteralKind::NotEqual, name(s), {name(t)}};
        } else if (s.is_leaf() && t.is_leaf()) {
          main = {LiteralKind::Equal, name(s), {name(t)}};
        } else if (!t.is_leaf()) {
          Operand lhs = name(s);
          main = define(lhs, t);
        } else {
          main = define(name(t), s);
        }
    }
    out_.push_back(std::move(main));
    for (auto& d : pending_) out_.push_back(std::move(d));
    pending_.clear();
  }

 private:
  FreshVarSupply& supply_;
  std::vector<Literal>& out_;
  std::vector<Literal> pending_;
  std::map<std::string, std::string> named_;
};
}  // namespace detail

/// Names every compound subterm by a fresh variable. Identical subterms
/// within the conjunction share one name.
inline std::vector<Literal> flatten(const Conjunction& c, FreshVarSupply& supply) {
  std::vector<Literal> out;
  detail::Flattener fl(supply, out);
  for (const auto& lit : c) fl.literal(lit);
  return out;
}

// ---------------------------------------------------------------------------
// Simplification.

namespace detail {
inline bool mentions_empty(const Literal& l) {
  if (l.lhs.is_empty()) return true;
  for (const auto& a : l.args)
    if (a.is_empty()) return true;
  return false;
}

template <typename Rewrite>
bool rewrite_each(std::vector<Literal>& lits, Rewrite rw) {
  bool changed = false;
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (auto& l : lits) {
    std::vector<Literal> repl;
    if (rw(l, repl)) {
      changed = true;
      for (auto& r : repl) out.push_back(std::move(r));
    } else {
      out.push_back(std::move(l));
    }
  }
  lits = std::move(out);
  return changed;
}
}  // namespace detail

inline NormalizedConjunction simplify(std::vector<Literal> lits, FreshVarSupply& supply) {
  using K = LiteralKind;
  std::string empty_var;  // y0 of (s3), shared across the conjunction
  bool changed = true;
  while (changed) {
    changed = false;
    // (s3)
    if (std::any_of(lits.begin(), lits.end(), detail::mentions_empty)) {
      if (empty_var.empty()) {
        empty_var = supply.next();
        lits.push_back({K::Diff, Operand::var(empty_var), {Operand::var(empty_var), Operand::var(empty_var)}});
      }
      for (auto& l : lits) {
        if (l.lhs.is_empty()) l.lhs = Operand::var(empty_var);
        for (auto& a : l.args)
          if (a.is_empty()) a = Operand::var(empty_var);
      }
      changed = true;
    }
    // (s4)
    changed |= detail::rewrite_each(lits, [&](const Literal& l, std::vector<Literal>& out) {
      if (l.kind != K::Inter) return false;
      Operand yp = Operand::var(supply.next());
      out.push_back({K::Diff, yp, {l.args[0], l.args[1]}});
      out.push_back({K::Diff, l.lhs, {l.args[0], yp}});
      return true;
    });
    // (s5)
    changed |= detail::rewrite_each(lits, [&](const Literal& l, std::vector<Literal>& out) {
      if (l.kind != K::Subset) return false;
      out.push_back({K::Union, l.args[0], {l.lhs, l.args[0]}});
      return true;
    });
    // (s1)
    changed |= detail::rewrite_each(lits, [&](const Literal& l, std::vector<Literal>& out) {
      if (l.kind != K::Equal) return false;
      out.push_back({K::Union, l.lhs, {l.args[0], l.args[0]}});
      return true;
    });
    // (s2)
    changed |= detail::rewrite_each(lits, [&](const Literal& l, std::vector<Literal>& out) {
      if (l.kind != K::NotSubset) return false;
      Operand zp = Operand::var(supply.next());
      out.push_back({K::Diff, zp, {l.lhs, l.args[0]}});
      out.push_back({K::NotEqual, zp, {Operand::empty()}});
      return true;
    });
    // (s6)
    changed |= detail::rewrite_each(lits, [&](const Literal& l, std::vector<Literal>& out) {
      if (l.kind != K::NotEqual) return false;
      Operand zp = Operand::var(supply.next());
      out.push_back({K::Member, l.lhs, {zp}});
      out.push_back({K::NotMember, l.args[0], {zp}});
      return true;
    });
    // (s7)
    changed |= detail::rewrite_each(lits, [&](const Literal& l, std::vector<Literal>& out) {
      if (l.kind != K::NotMember) return false;
      Operand zp = Operand::var(supply.next());
      out.push_back({K::Member, l.lhs, {zp}});
      out.push_back({K::Diff, zp, {zp, l.args[0]}});
      return true;
    });
  }
  for (const auto& l : lits)
    if (!is_normalized_shape(l)) throw Error("simplify: residual literal " + to_string(l));
  return NormalizedConjunction{std::move(lits)};
}

/// Equisatisfiable normalized conjunctions, one per DNF disjunct.
inline std::vector<NormalizedConjunction> normalize_full(const Formula& f) {
  FreshVarSupply supply(vars(f));
  std::vector<NormalizedConjunction> out;
  for (const auto& c : to_dnf(f)) out.push_back(simplify(flatten(c, supply), supply));
  return out;
}

/// Disjunction of the normalized conjunctions as a single formula.
inline Formula normalized_formula(const std::vector<NormalizedConjunction>& parts) {
  std::vector<Formula> fs;
  for (const auto& p : parts) fs.push_back(p.to_formula());
  return Formula::disj_all(fs);
}

}  // namespace syllogist
