#pragma once

// Random terms and formulas for property tests and the normalization corpus.

#include <random>
#include <string>
#include <vector>

#include "syllogist/syntax.hpp"

namespace syllogist::testgen {

struct GenOptions {
  std::vector<std::string> names{"x", "y", "z", "w"};
  std::size_t formula_depth = 3;
  std::size_t term_depth = 3;
  /// Allow every term constructor; otherwise pow, cross and ucross only take
  /// Boolean combinations of variables, which keeps values small.
  bool unrestricted = false;
  bool allow_finite = false;
  bool allow_big_inter = false;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed, GenOptions opt = {}) : rng_(seed), opt_(std::move(opt)) {}

  Term term(std::size_t depth) { return term(depth, opt_.unrestricted); }

  Formula formula(std::size_t depth) {
    if (depth == 0 || pick(3) == 0) return atom();
    switch (pick(5)) {
      case 0: return Formula::negate(formula(depth - 1));
      case 1: return Formula::conj(formula(depth - 1), formula(depth - 1));
      case 2: return Formula::disj(formula(depth - 1), formula(depth - 1));
      case 3: return Formula::implies(formula(depth - 1), formula(depth - 1));
      default: return Formula::iff(formula(depth - 1), formula(depth - 1));
    }
  }

  Formula formula() { return formula(opt_.formula_depth); }

  Formula atom() {
    std::size_t kinds = opt_.allow_finite ? 4 : 3;
    switch (pick(kinds)) {
      case 0: return Formula::mem(term(pick(opt_.term_depth + 1)), term(pick(opt_.term_depth + 1)));
      case 1: return Formula::eq(term(pick(opt_.term_depth + 1)), term(pick(opt_.term_depth + 1)));
      case 2: return Formula::sub(term(pick(opt_.term_depth + 1)), term(pick(opt_.term_depth + 1)));
      default: return Formula::finite(term(pick(opt_.term_depth + 1)));
    }
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  Term leaf() {
    if (pick(6) == 0) return Term::empty();
    return Term::var(opt_.names[pick(opt_.names.size())]);
  }

  Term boolean(std::size_t depth) {
    if (depth == 0 || pick(2) == 0) return leaf();
    switch (pick(3)) {
      case 0: return Term::un(boolean(depth - 1), boolean(depth - 1));
      case 1: return Term::inter(boolean(depth - 1), boolean(depth - 1));
      default: return Term::diff(boolean(depth - 1), boolean(depth - 1));
    }
  }

  Term term(std::size_t depth, bool free) {
    if (depth == 0 || pick(4) == 0) return leaf();
    auto sub = [&] { return term(depth - 1, free); };
    auto small = [&] { return free ? term(depth - 1, true) : boolean(depth - 1); };
    switch (pick(12)) {
      case 0:
      case 1: return Term::un(sub(), sub());
      case 2: return Term::inter(sub(), sub());
      case 3:
      case 4: return Term::diff(sub(), sub());
      case 5: return Term::pow(free ? sub() : boolean(depth - 1));
      case 6: return Term::cross(small(), small());
      case 7: return Term::ucross(small(), small());
      case 8: return Term::big_union(sub());
      case 9:
        if (opt_.allow_big_inter) return Term::big_inter(sub());
        return Term::dun(sub());
      case 10: return Term::dun(sub());
      default: {
        std::vector<Term> items{sub()};
        if (pick(2)) items.push_back(sub());
        return Term::display(std::move(items));
      }
    }
  }

  std::mt19937_64 rng_;
  GenOptions opt_;
};

}  // namespace syllogist::testgen
