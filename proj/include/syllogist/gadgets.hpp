#pragma once

// Formulas that express sets, singletons, cardinality and finiteness, each
// paired with the semantic property it is claimed to enforce.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "syllogist/hf.hpp"
#include "syllogist/normalize.hpp"
#include "syllogist/semantics.hpp"
#include "syllogist/syntax.hpp"

namespace syllogist {

struct GadgetSpec {
  GadgetSpec(std::string n, Formula f) : name(std::move(n)), formula(std::move(f)) {}

  std::string name;
  Formula formula;
  std::vector<std::string> interface_vars;
  std::string property_name;
  std::function<bool(const Assignment&)> claimed_property;
  std::string note;
  /// Interface variables no literal mentions.
  std::vector<std::string> unconstrained_vars;

  /// Free variables of the formula plus the unconstrained interface ones.
  std::set<std::string> all_vars() const {
    auto vs = vars(formula);
    vs.insert(unconstrained_vars.begin(), unconstrained_vars.end());
    return vs;
  }
};

enum class GadgetMode { Literal, Semantic };

inline const char* to_string(GadgetMode m) { return m == GadgetMode::Literal ? "literal" : "semantic"; }

namespace detail {
inline Term v(const std::string& name) { return Term::var(name); }

inline Term union_fold(const std::vector<Term>& items) {
  if (items.empty()) return Term::empty();
  Term acc = items[0];
  for (std::size_t i = 1; i < items.size(); ++i) acc = Term::un(acc, items[i]);
  return acc;
}

inline Formula neq(Term a, Term b) { return Formula::negate(Formula::eq(std::move(a), std::move(b))); }

/// a strictly included in b, as a subset literal and a disequality.
inline Formula proper_sub(Term a, Term b) {
  return Formula::conj(Formula::sub(a, b), neq(a, b));
}

inline std::string code_suffix(const HfSet& h) { return ack_code(h).str(); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Representing formulas.

/// Variable intended to hold {h}.
inline std::string repr_var(const HfSet& h) { return "xs_" + detail::code_suffix(h); }
/// Variable intended to hold h.
inline std::string value_var(const HfSet& h) { return "x_" + detail::code_suffix(h); }

/// Sets reachable from h through members and proper subsets, h included, in
/// increasing order.
inline std::vector<HfSet> repr_index_set(const HfSet& h) {
  const std::size_t cap = current_caps().repr_closure;
  std::set<HfSet, decltype(&ack_less)> seen(&ack_less);
  std::vector<HfSet> stack{h};
  while (!stack.empty()) {
    HfSet s = stack.back();
    stack.pop_back();
    if (!seen.insert(s).second) continue;
    if (seen.size() > cap)
      throw CapExceeded("representing formula index set exceeds cap " + std::to_string(cap));
    for (const auto& e : s.elements()) stack.push_back(e);
    if (s.size() > 20) throw CapExceeded("representing formula: set with more than 20 members");
    const std::uint64_t full = (std::uint64_t{1} << s.size()) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) stack.push_back(detail::subset_by_mask(s.elements(), mask));
  }
  return {seen.begin(), seen.end()};
}

namespace detail {
// x_{h} = pow(U x_{h'}) \ U x_{h''}, or the base case for h = 0.
inline Formula repr_equation(const HfSet& h) {
  Term self = v(repr_var(h));
  if (h.empty()) return Formula::eq(self, Term::pow(Term::diff(self, self)));
  std::vector<Term> members, proper;
  for (const auto& e : h.elements()) members.push_back(v(repr_var(e)));
  std::vector<HfSet> subsets;
  const std::uint64_t full = (std::uint64_t{1} << h.size()) - 1;
  for (std::uint64_t mask = 0; mask < full; ++mask) subsets.push_back(subset_by_mask(h.elements(), mask));
  std::sort(subsets.begin(), subsets.end(), ack_less);
  for (const auto& p : subsets) proper.push_back(v(repr_var(p)));
  return Formula::eq(self, Term::diff(Term::pow(union_fold(members)), union_fold(proper)));
}

inline std::function<bool(const Assignment&)> faithfulness(std::vector<HfSet> index) {
  return [index = std::move(index)](const Assignment& m) {
    for (const auto& k : index) {
      auto it = m.find(repr_var(k));
      if (it == m.end() || it->second != HfSet::singleton(k)) return false;
    }
    return true;
  };
}
}  // namespace detail

/// Formula over variables xs_N (N the Ackermann code of an index set member k)
/// whose models map every xs_N to {k}; one equation per index, in increasing
/// order.
inline GadgetSpec repr_formula(const HfSet& h) {
  auto index = repr_index_set(h);
  std::vector<Formula> parts;
  for (const auto& k : index) parts.push_back(detail::repr_equation(k));
  GadgetSpec g("repr", Formula::conj_all(parts));
  g.interface_vars = {repr_var(h)};
  g.property_name = "faithful";
  g.claimed_property = detail::faithfulness(index);
  g.note = "xs_N holds {k} where N is the Ackermann code of k; target " + h.to_string();
  return g;
}

/// Formula whose models map x_N to h (N the Ackermann code of h).
inline GadgetSpec hf_value_formula(const HfSet& h) {
  Term self = detail::v(value_var(h));
  std::vector<Formula> parts;
  std::vector<HfSet> index;
  if (h.empty()) {
    parts.push_back(Formula::eq(self, Term::diff(self, self)));
  } else {
    std::set<HfSet, decltype(&ack_less)> all(&ack_less);
    std::vector<Term> members;
    for (const auto& e : h.elements()) {
      members.push_back(detail::v(repr_var(e)));
      for (const auto& k : repr_index_set(e)) all.insert(k);
    }
    parts.push_back(Formula::eq(self, detail::union_fold(members)));
    index.assign(all.begin(), all.end());
    for (const auto& k : index) parts.push_back(detail::repr_equation(k));
  }
  GadgetSpec g("hf-value", Formula::conj_all(parts));
  g.interface_vars = {value_var(h)};
  g.property_name = "value";
  auto faithful = detail::faithfulness(index);
  g.claimed_property = [h, name = value_var(h), faithful](const Assignment& m) {
    auto it = m.find(name);
    return it != m.end() && it->second == h && faithful(m);
  };
  g.note = "x_N holds " + h.to_string();
  return g;
}

// ---------------------------------------------------------------------------
// P*.

/// Term pow(S) \ (pow(S \ y_1) u ... u pow(S \ y_k)) with S = y_1 u ... u y_k.
inline Term powast_term(const std::vector<std::string>& names) {
  std::vector<Term> ys, excluded;
  for (const auto& n : names) ys.push_back(Term::var(n));
  Term s = detail::union_fold(ys);
  for (const auto& y : ys) excluded.push_back(Term::pow(Term::diff(s, y)));
  return Term::diff(Term::pow(s), detail::union_fold(excluded));
}

/// `p = <powast term>`; the claimed property is M p = P*(M y_1, ..., M y_k).
inline GadgetSpec powast_expression(std::size_t k, std::vector<std::string> names = {},
                                    const std::string& result = "p") {
  if (k > 3) throw Error("powast_expression: arity above 3");
  if (names.empty())
    for (std::size_t i = 1; i <= k; ++i) names.push_back("y" + std::to_string(i));
  if (names.size() != k) throw Error("powast_expression: expected " + std::to_string(k) + " names");
  GadgetSpec g("powast", Formula::eq(Term::var(result), powast_term(names)));
  g.interface_vars = names;
  g.interface_vars.push_back(result);
  g.property_name = "powast";
  g.claimed_property = [names, result](const Assignment& m) {
    std::vector<HfSet> args;
    for (const auto& n : names) args.push_back(lookup(m, n));
    return lookup(m, result) == powast(args);
  };
  g.note = "arity " + std::to_string(k);
  return g;
}

// ---------------------------------------------------------------------------
// Singletons.

struct AlphaBetaNames {
  std::string x = "x", xp = "x'", yp = "y'", w = "w", z = "z";
};

/// Expected values of x', y', w, z given M x.
inline Assignment alphabeta_extension(const HfSet& x, const AlphaBetaNames& n = {}) {
  HfSet xp = HfSet::singleton(x);
  HfSet yp = upair(x, xp);
  return {{n.x, x}, {n.xp, xp}, {n.yp, yp}, {n.w, kpair(x, xp)}, {n.z, cart_prod(yp, yp)}};
}

/// x in x' in w in z = y' x y'  and  x' in y' in w.
inline GadgetSpec singleton_alphabeta(const AlphaBetaNames& n = {}) {
  using detail::v;
  std::vector<Formula> parts{
      Formula::mem(v(n.x), v(n.xp)),
      Formula::mem(v(n.xp), v(n.w)),
      Formula::mem(v(n.w), v(n.z)),
      Formula::eq(v(n.z), Term::cross(v(n.yp), v(n.yp))),
      Formula::mem(v(n.xp), v(n.yp)),
      Formula::mem(v(n.yp), v(n.w)),
  };
  GadgetSpec g("singleton-alphabeta", Formula::conj_all(parts));
  g.interface_vars = {n.x, n.xp};
  g.property_name = "unique-extension";
  g.claimed_property = [n](const Assignment& m) { return restrict_to(m, {n.x, n.xp, n.yp, n.w, n.z}) ==
                                                         alphabeta_extension(lookup(m, n.x), n); };
  g.note = "x' = {x}, y' = {x,{x}}, w = (x,{x}), z = y' x y'";
  return g;
}

/// x, x' in y', x' != x, y' in y' x y', x in y, y strictly included in y'
/// (with `ucross` in place of `cross` when `unordered`).
inline Formula singleton_lemma_compact(const std::string& x, const std::string& y, const std::string& xp = "x'",
                                       const std::string& yp = "y'", bool unordered = false) {
  using detail::v;
  Term prod = unordered ? Term::ucross(v(yp), v(yp)) : Term::cross(v(yp), v(yp));
  std::vector<Formula> parts{
      Formula::mem(v(x), v(yp)),  Formula::mem(v(xp), v(yp)), detail::neq(v(xp), v(x)),
      Formula::mem(v(yp), prod), Formula::mem(v(x), v(y)),    detail::proper_sub(v(y), v(yp)),
  };
  return Formula::conj_all(parts);
}

/// The lemma's literal list, with the disequality and strict inclusion
/// rewritten into flat literals by normalization.
inline GadgetSpec singleton_lemma_gadget(const std::string& x = "x", const std::string& y = "y") {
  auto compact = singleton_lemma_compact(x, y);
  auto parts = normalize_full(compact);
  GadgetSpec g("singleton-lemma", parts.at(0).to_formula());
  g.interface_vars = {x, y};
  g.property_name = "singleton";
  g.claimed_property = [x, y](const Assignment& m) { return lookup(m, y) == HfSet::singleton(lookup(m, x)); };
  g.note = "compact form: " + print_formula(compact);
  return g;
}

// ---------------------------------------------------------------------------
// Cardinality and finiteness.

struct CardNames {
  std::string s = "s", yp = "y'", z = "z";
  // Auxiliaries of the literal-mode singleton.
  std::string t = "t", u = "u";
};

/// C(x, y, y', z):  y' = {x} (x) y,  z sub x (x) y',  dun(z) = x u y'.
/// The singleton {x} is the variable s, bound by s = {x} (semantic mode) or
/// by the lemma's literals with unordered products (literal mode).
inline GadgetSpec card_eq_gadget(const std::string& x, const std::string& y, GadgetMode mode,
                                 const CardNames& n = {}) {
  using detail::v;
  std::vector<Formula> parts;
  if (mode == GadgetMode::Semantic) parts.push_back(Formula::eq(v(n.s), Term::display({v(x)})));
  else parts.push_back(singleton_lemma_compact(x, n.s, n.u, n.t, true));
  parts.push_back(Formula::eq(v(n.yp), Term::ucross(v(n.s), v(y))));
  parts.push_back(Formula::sub(v(n.z), Term::ucross(v(x), v(n.yp))));
  parts.push_back(Formula::eq(Term::dun(v(n.z)), Term::un(v(x), v(n.yp))));
  GadgetSpec g("card-eq", Formula::conj_all(parts));
  g.interface_vars = {x, y};
  g.property_name = "equal-cardinality";
  g.claimed_property = [x, y](const Assignment& m) { return lookup(m, x).size() == lookup(m, y).size(); };
  g.note = std::string(to_string(mode)) + " mode";
  return g;
}

/// a_0 .. a_{k-1} and a_0 .. a_k.
inline Assignment chain_assignment(std::size_t k, const std::string& y = "y", const std::string& z = "z") {
  auto a = chain(k);
  HfSet zs = HfSet::of(a);
  a.pop_back();
  return {{y, HfSet::of(a)}, {z, zs}};
}

/// True iff (Y, Z) = ({a_l : l < k}, {a_l : l <= k}) for some k.
inline bool is_chain_pair(const HfSet& y, const HfSet& z) {
  auto expect = chain_assignment(y.size());
  return expect.at("y") == y && expect.at("z") == z;
}

/// {0} (x) ({0} u y) = z  and  y strictly included in z.
inline GadgetSpec dichotomy_witness(const std::string& y = "y", const std::string& z = "z") {
  using detail::v;
  Term e = Term::display({Term::empty()});
  GadgetSpec g("dichotomy-witness", Formula::conj(Formula::eq(Term::ucross(e, Term::un(e, v(y))), v(z)), detail::proper_sub(v(y), v(z))));
  g.interface_vars = {y, z};
  g.property_name = "chain-pair";
  g.claimed_property = [y, z](const Assignment& m) { return is_chain_pair(lookup(m, y), lookup(m, z)); };
  return g;
}

struct FiniteNames {
  std::string w = "w", y = "y", z = "z";
  CardNames card{"s", "y''", "z'", "t", "u"};
  // Literal mode: e0 holds 0 and e its singleton.
  std::string e0 = "e0", e = "e", et = "et", eu = "eu";
};

/// F(x, w, y, z):  z = {0} (x) ({0} u w),  w strictly included in z,  |x| = |w|.
/// y is an interface variable no literal mentions.
inline GadgetSpec finite_gadget(const std::string& x, GadgetMode mode, const FiniteNames& n = {}) {
  using detail::v;
  std::vector<Formula> parts;
  Term e = Term::display({Term::empty()});
  if (mode == GadgetMode::Literal) {
    parts.push_back(Formula::eq(v(n.e0), Term::diff(v(n.e0), v(n.e0))));
    parts.push_back(singleton_lemma_compact(n.e0, n.e, n.eu, n.et, true));
    e = v(n.e);
  }
  parts.push_back(Formula::eq(v(n.z), Term::ucross(e, Term::un(e, v(n.w)))));
  parts.push_back(detail::proper_sub(v(n.w), v(n.z)));
  parts.push_back(card_eq_gadget(x, n.w, mode, n.card).formula);
  GadgetSpec g("finite", Formula::conj_all(parts));
  g.interface_vars = {x, n.w, n.y, n.z};
  g.unconstrained_vars = {n.y};
  g.property_name = "finite-chain";
  g.claimed_property = [x, n](const Assignment& m) {
    const HfSet& w = lookup(m, n.w);
    return is_chain_pair(w, lookup(m, n.z)) && lookup(m, x).size() == w.size();
  };
  g.note = std::string(to_string(mode)) + " mode; " + n.y + " is unconstrained";
  return g;
}

}  // namespace syllogist
