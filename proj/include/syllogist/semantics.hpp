#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "syllogist/hf.hpp"
#include "syllogist/syntax.hpp"

namespace syllogist {

/// A set assignment: variable name to value.
using Assignment = std::map<std::string, HfSet>;

inline const HfSet& lookup(const Assignment& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw UnboundVariable(name);
  return it->second;
}

inline HfSet eval_term(const Assignment& m, const Term& t) {
  auto args = t.args();
  switch (t.kind()) {
    case TermKind::Var: return lookup(m, t.name());
    case TermKind::Empty: return {};
    case TermKind::Union: return set_union(eval_term(m, args[0]), eval_term(m, args[1]));
    case TermKind::Inter: return set_inter(eval_term(m, args[0]), eval_term(m, args[1]));
    case TermKind::Diff: return set_diff(eval_term(m, args[0]), eval_term(m, args[1]));
    case TermKind::Cross: return cart_prod(eval_term(m, args[0]), eval_term(m, args[1]));
    case TermKind::UCross: return unord_prod(eval_term(m, args[0]), eval_term(m, args[1]));
    case TermKind::Pow: return powerset(eval_term(m, args[0]));
    case TermKind::BigUnion: return big_union(eval_term(m, args[0]));
    case TermKind::BigInter: return big_inter(eval_term(m, args[0]));
    case TermKind::DisjUnion: return disj_union(eval_term(m, args[0]));
    case TermKind::Display: {
      std::vector<HfSet> items;
      items.reserve(args.size());
      for (const auto& a : args) items.push_back(eval_term(m, a));
      return HfSet::of(std::move(items));
    }
  }
  throw Error("eval_term: unknown term kind");
}

/// Truth value of `f` under `m`. Connectives short-circuit left to right; an
/// undefined generalized intersection raises EmptyIntersection rather than
/// yielding false. Finite(.) always holds since every value is in HF.
inline bool eval_formula(const Assignment& m, const Formula& f) {
  auto subs = f.subs();
  switch (f.kind()) {
    case FormulaKind::Mem: return eval_term(m, f.terms()[1]).contains(eval_term(m, f.terms()[0]));
    case FormulaKind::Eq: return eval_term(m, f.terms()[0]) == eval_term(m, f.terms()[1]);
    case FormulaKind::Sub: return eval_term(m, f.terms()[0]).is_subset_of(eval_term(m, f.terms()[1]));
    case FormulaKind::Finite:
      eval_term(m, f.terms()[0]);
      return true;
    case FormulaKind::Not: return !eval_formula(m, subs[0]);
    case FormulaKind::And: return eval_formula(m, subs[0]) && eval_formula(m, subs[1]);
    case FormulaKind::Or: return eval_formula(m, subs[0]) || eval_formula(m, subs[1]);
    case FormulaKind::Implies: return !eval_formula(m, subs[0]) || eval_formula(m, subs[1]);
    case FormulaKind::Iff: return eval_formula(m, subs[0]) == eval_formula(m, subs[1]);
  }
  throw Error("eval_formula: unknown formula kind");
}

/// Rank of the union of the values of the variables of `f`.
inline std::size_t dom_rank(const Assignment& m, const Formula& f) {
  std::size_t r = 0;
  for (const auto& v : vars(f)) r = std::max(r, lookup(m, v).rank());
  return r;
}

/// Ranks of the values of the variables of `f`.
inline std::set<std::size_t> var_ranks(const Assignment& m, const Formula& f) {
  std::set<std::size_t> ranks;
  for (const auto& v : vars(f)) ranks.insert(lookup(m, v).rank());
  return ranks;
}

/// True iff the ranks of the values of the variables of `f` form an initial
/// segment {0, 1, ..., n} of the naturals.
inline bool ordinal_condition(const Assignment& m, const Formula& f) {
  auto ranks = var_ranks(m, f);
  std::size_t expect = 0;
  for (auto r : ranks)
    if (r != expect++) return false;
  return true;
}

/// Restriction of `m` to the given variables.
inline Assignment restrict_to(const Assignment& m, const std::set<std::string>& names) {
  Assignment out;
  for (const auto& n : names) out.emplace(n, lookup(m, n));
  return out;
}

}  // namespace syllogist
