#include <gtest/gtest.h>

#include "support/random_formula.hpp"
#include "syllogist/syntax.hpp"

using namespace syllogist;

namespace {

const char* kTableFormula = "!(un(z,x) in {un(x,0), pow(int(y, diff(z,{x})))} -> (x notin In(z) | z in Un(x)))";

std::set<std::string> names(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST(Parse, EqualityWithUnion) {
  Formula f = parse_formula("x = un(y,z)");
  EXPECT_EQ(f, Formula::eq(Term::var("x"), Term::un(Term::var("y"), Term::var("z"))));
}

TEST(Parse, NegationAndFinite) {
  Formula f = parse_formula("!(x in y) & Finite(z)");
  ASSERT_EQ(f.kind(), FormulaKind::And);
  EXPECT_EQ(f.subs()[0].kind(), FormulaKind::Not);
  EXPECT_EQ(f.subs()[0].subs()[0].kind(), FormulaKind::Mem);
  EXPECT_EQ(f.subs()[1].kind(), FormulaKind::Finite);
}

TEST(Parse, BigInterOfEmptyParses) {
  Term t = parse_term("In(0)");
  EXPECT_EQ(t.kind(), TermKind::BigInter);
  EXPECT_EQ(t.args()[0].kind(), TermKind::Empty);
  EXPECT_NO_THROW(parse_formula("x = In(0)"));
}

TEST(Parse, SugaredNegations) {
  EXPECT_EQ(parse_formula("x != y"), Formula::negate(parse_formula("x = y")));
  EXPECT_EQ(parse_formula("x notin y"), Formula::negate(parse_formula("x in y")));
}

TEST(Parse, Precedence) {
  // & binds tighter than |, | tighter than ->, -> tighter than <->.
  Formula f = parse_formula("a in b | c in d & e in g -> h in i <-> j in k");
  ASSERT_EQ(f.kind(), FormulaKind::Iff);
  const Formula& imp = f.subs()[0];
  ASSERT_EQ(imp.kind(), FormulaKind::Implies);
  ASSERT_EQ(imp.subs()[0].kind(), FormulaKind::Or);
  EXPECT_EQ(imp.subs()[0].subs()[1].kind(), FormulaKind::And);
}

TEST(Parse, ImplicationIsRightAssociative) {
  Formula f = parse_formula("a in b -> c in d -> e in g");
  ASSERT_EQ(f.kind(), FormulaKind::Implies);
  EXPECT_EQ(f.subs()[1].kind(), FormulaKind::Implies);
}

TEST(Parse, ConjunctionIsLeftAssociative) {
  Formula f = parse_formula("a in b & c in d & e in g");
  ASSERT_EQ(f.kind(), FormulaKind::And);
  EXPECT_EQ(f.subs()[0].kind(), FormulaKind::And);
}

TEST(Parse, PrimesAndUnderscoresInNames) {
  EXPECT_EQ(vars(parse_formula("y' in _a1 & x'' = b_2")), names({"y'", "_a1", "x''", "b_2"}));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("x = { }"), SyntaxError);
  EXPECT_THROW(parse_formula("x = un(y)"), SyntaxError);
  EXPECT_THROW(parse_formula("x in"), SyntaxError);
  EXPECT_THROW(parse_formula("un = x"), SyntaxError);
  EXPECT_THROW(parse_formula("x y"), SyntaxError);
  EXPECT_THROW(parse_formula("(x in y"), SyntaxError);
  EXPECT_THROW(parse_formula("x # y"), SyntaxError);
}

TEST(Parse, ErrorPosition) {
  try {
    parse_formula("x in y &\n  z ? w");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
  }
}

TEST(Print, EqualityWithEmpty) { EXPECT_EQ(print_formula(Formula::eq(Term::var("x"), Term::empty())), "x = 0"); }

TEST(Print, NestedConjunctionsParenthesized) {
  Formula a = parse_formula("a in b"), c = parse_formula("c in d"), e = parse_formula("e in g");
  EXPECT_EQ(print_formula(Formula::conj(Formula::conj(a, c), e)), "a in b & c in d & e in g");
  EXPECT_EQ(print_formula(Formula::conj(a, Formula::conj(c, e))), "a in b & (c in d & e in g)");
  EXPECT_EQ(print_formula(Formula::implies(Formula::implies(a, c), e)), "(a in b -> c in d) -> e in g");
}

TEST(Print, Idempotent) {
  std::string once = print_formula(parse_formula(kTableFormula));
  EXPECT_EQ(print_formula(parse_formula(once)), once);
}

TEST(Vars, TableFormula) { EXPECT_EQ(vars(parse_formula(kTableFormula)), names({"x", "y", "z"})); }

TEST(Vars, ClosedFormula) { EXPECT_TRUE(vars(parse_formula("0 = 0")).empty()); }

TEST(Depth, TermDepth) {
  EXPECT_EQ(term_depth(parse_term("x")), 0u);
  EXPECT_EQ(term_depth(parse_term("un(x,pow(y))")), 2u);
  EXPECT_EQ(max_term_depth(parse_formula("x in {y} & z = un(x,pow(y))")), 2u);
}

TEST(Fragment, Examples) {
  EXPECT_EQ(classify_fragment(parse_formula("x = un(y,z)")), FragmentTag::MLS);
  EXPECT_EQ(classify_fragment(parse_formula("x sub pow(y) & x != int(y,z)")), FragmentTag::MLSP);
  EXPECT_EQ(classify_fragment(parse_formula("x = cross(y,z)")), FragmentTag::MLSC);
  EXPECT_EQ(classify_fragment(parse_formula("x = ucross(y,z)")), FragmentTag::MLSCNOTORD);
  EXPECT_EQ(classify_fragment(parse_formula("x = ucross(y,z) & w = dun(x)")), FragmentTag::MLSCNOTORD_DU);
  EXPECT_EQ(classify_fragment(parse_formula("Finite(x)")), FragmentTag::S_FULL);
  EXPECT_EQ(classify_fragment(parse_formula("x = pow(cross(y,z))")), FragmentTag::S_FULL);
}

TEST(Fragment, Order) {
  EXPECT_TRUE(fragment_leq(FragmentTag::MLS, FragmentTag::MLSP));
  EXPECT_TRUE(fragment_leq(FragmentTag::MLSCNOTORD, FragmentTag::MLSCNOTORD_DU));
  EXPECT_FALSE(fragment_leq(FragmentTag::MLSP, FragmentTag::MLSC));
  EXPECT_FALSE(fragment_leq(FragmentTag::MLSCNOTORD_DU, FragmentTag::MLSCNOTORD));
  EXPECT_TRUE(fragment_leq(FragmentTag::MLSC, FragmentTag::S_FULL));
}

TEST(Property, RoundTripRandomAsts) {
  testgen::GenOptions opt;
  opt.formula_depth = 5;
  opt.term_depth = 5;
  opt.unrestricted = true;
  opt.allow_finite = true;
  opt.allow_big_inter = true;
  opt.names = {"x", "y", "z", "w", "y'", "_v1"};
  testgen::Generator gen(20240611, opt);
  for (int i = 0; i < 1500; ++i) {
    Formula f = gen.formula();
    std::string text = print_formula(f);
    Formula g = parse_formula(text);
    ASSERT_EQ(g, f) << text;
    ASSERT_EQ(print_formula(g), text);
    ASSERT_EQ(vars(g), vars(f));
  }
}

TEST(Property, TermRoundTrip) {
  testgen::GenOptions opt;
  opt.unrestricted = true;
  opt.allow_big_inter = true;
  testgen::Generator gen(7, opt);
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.term(5);
    ASSERT_EQ(parse_term(print_term(t)), t) << print_term(t);
  }
}

TEST(Property, FragmentMonotoneUnderConjunction) {
  testgen::GenOptions opt;
  opt.unrestricted = true;
  opt.allow_finite = true;
  testgen::Generator gen(99, opt);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula(), g = gen.formula();
    FragmentTag before = classify_fragment(f);
    FragmentTag after = classify_fragment(Formula::conj(f, g));
    ASSERT_TRUE(fragment_leq(before, after)) << print_formula(f) << " / " << print_formula(g);
  }
}

TEST(Conjuncts, Flatten) {
  auto cs = conjuncts(parse_formula("a in b & (c in d & e in g) & !(h in i)"));
  ASSERT_EQ(cs.size(), 4u);
  EXPECT_EQ(print_formula(cs[3]), "!(h in i)");
}
