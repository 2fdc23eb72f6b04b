#include <gtest/gtest.h>

#include "syllogist/gadgets.hpp"
#include "syllogist/solver.hpp"

using namespace syllogist;

namespace {

HfSet hf(const char* s) { return parse_hf(s); }

std::uint64_t code_of_var(const std::string& name) { return std::stoull(name.substr(name.find('_') + 1)); }

std::vector<GadgetSpec> all_gadgets() {
  std::vector<GadgetSpec> gs{
      repr_formula(hf("{{},{{}}}")),
      hf_value_formula(hf("{{},{{}}}")),
      powast_expression(0),
      powast_expression(2),
      powast_expression(3),
      singleton_alphabeta(),
      singleton_lemma_gadget(),
      card_eq_gadget("x", "y", GadgetMode::Semantic),
      card_eq_gadget("x", "y", GadgetMode::Literal),
      finite_gadget("x", GadgetMode::Semantic),
      finite_gadget("x", GadgetMode::Literal),
      dichotomy_witness(),
  };
  return gs;
}

}  // namespace

TEST(Repr, EmptySetBaseCase) {
  EXPECT_EQ(print_formula(repr_formula(HfSet{}).formula), "xs_0 = pow(diff(xs_0,xs_0))");
  EXPECT_EQ(repr_var(HfSet{}), "xs_0");
  EXPECT_EQ(repr_var(hf("{{}}")), "xs_1");
}

TEST(Repr, SingletonOfEmptyForcedBySolver) {
  auto g = repr_formula(hf("{{}}"));
  SearchConfig cfg;
  cfg.rank_bound = 3;
  auto models = enumerate_models(g.formula, cfg);
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].at("xs_1"), hf("{{{}}}"));
  EXPECT_TRUE(g.claimed_property(models[0]));
}

TEST(Repr, IndicesDecreaseAlongRecursion) {
  for (const auto& h : rank_universe(2)) {
    auto g = repr_formula(h);
    for (const auto& eq : conjuncts(g.formula)) {
      ASSERT_EQ(eq.kind(), FormulaKind::Eq);
      const std::string self = eq.terms()[0].name();
      for (const auto& n : vars(eq.terms()[1])) {
        if (n == self) {
          EXPECT_EQ(self, "xs_0");
          continue;
        }
        EXPECT_TRUE(ack_less(ack_decode(code_of_var(n)), ack_decode(code_of_var(self)))) << n << " in " << self;
      }
    }
  }
}

TEST(Repr, VariablesMatchIndexSet) {
  for (const auto& h : rank_universe(2)) {
    std::set<std::string> expect;
    for (const auto& k : repr_index_set(h)) expect.insert(repr_var(k));
    EXPECT_EQ(vars(repr_formula(h).formula), expect) << h.to_string();
  }
}

TEST(Repr, IndexSetClosedUnderMembersAndSubsets) {
  auto idx = repr_index_set(hf("{{},{{}},{{{}}}}"));
  std::set<HfSet, decltype(&ack_less)> s(idx.begin(), idx.end(), &ack_less);
  for (const auto& k : idx) {
    for (const auto& e : k.elements()) EXPECT_TRUE(s.count(e));
    HfSet subsets = powerset(k);
    for (const auto& p : subsets.elements()) EXPECT_TRUE(s.count(p));
  }
}

TEST(Repr, ClosureCap) {
  Caps caps;
  caps.repr_closure = 3;
  ScopedCaps scope(caps);
  EXPECT_THROW(repr_formula(hf("{{},{{}},{{{}}}}")), CapExceeded);
}

TEST(HfValue, EmptySet) {
  auto g = hf_value_formula(HfSet{});
  EXPECT_EQ(print_formula(g.formula), "x_0 = diff(x_0,x_0)");
  SearchConfig cfg;
  auto models = enumerate_models(g.formula, cfg);
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].at("x_0"), HfSet{});
}

TEST(HfValue, UniqueValueForFirstVonNeumannPair) {
  HfSet h = hf("{{},{{}}}");
  auto g = hf_value_formula(h);
  EXPECT_EQ(value_var(h), "x_3");
  EXPECT_EQ(print_formula(conjuncts(g.formula)[0]), "x_3 = un(xs_0,xs_1)");
  SearchConfig cfg;
  cfg.rank_bound = 3;
  auto models = enumerate_models(g.formula, cfg);
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].at("x_3"), h);
  EXPECT_TRUE(g.claimed_property(models[0]));
}

TEST(HfValue, VariableCount) {
  for (const auto& h : rank_universe(2)) {
    if (h.empty()) continue;
    std::set<HfSet, decltype(&ack_less)> idx(&ack_less);
    for (const auto& e : h.elements())
      for (const auto& k : repr_index_set(e)) idx.insert(k);
    EXPECT_EQ(vars(hf_value_formula(h).formula).size(), 1 + idx.size()) << h.to_string();
  }
}

TEST(Powast, BinaryShape) {
  EXPECT_EQ(print_term(powast_term({"s1", "s2"})), "diff(pow(un(s1,s2)),un(pow(diff(un(s1,s2),s1)),pow(diff(un(s1,s2),s2))))");
}

TEST(Powast, AgreesWithCoreOperator) {
  const auto pool = rank_universe(2);
  for (std::size_t k = 1; k <= 3; ++k) {
    auto g = powast_expression(k);
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      Assignment m;
      std::vector<HfSet> args;
      for (std::size_t i = 0; i < k; ++i) {
        m["y" + std::to_string(i + 1)] = pool[idx[i]];
        args.push_back(pool[idx[i]]);
      }
      m["p"] = eval_term(m, g.formula.terms()[1]);
      ASSERT_EQ(m["p"], powast(args));
      ASSERT_TRUE(g.claimed_property(m));
      if (std::any_of(args.begin(), args.end(), [](const HfSet& a) { return a.empty(); })) ASSERT_TRUE(m["p"].empty());
      std::size_t p = k;
      while (p > 0 && ++idx[p - 1] == pool.size()) idx[--p] = 0;
      if (p == 0) break;
    }
  }
}

TEST(Powast, ArityLimit) { EXPECT_THROW(powast_expression(4), Error); }

TEST(AlphaBeta, EmptyBase) {
  auto ext = alphabeta_extension(HfSet{});
  EXPECT_EQ(ext.at("y'"), chain(1)[1]);
  EXPECT_TRUE(eval_formula(ext, singleton_alphabeta().formula));
}

TEST(AlphaBeta, ProductRankFourAbove) {
  for (const auto& x : rank_universe(2)) {
    auto ext = alphabeta_extension(x);
    EXPECT_EQ(ext.at("z").rank(), x.rank() + 4) << x.to_string();
    EXPECT_TRUE(singleton_alphabeta().claimed_property(ext));
  }
}

TEST(SingletonLemma, ShapeAndFragment) {
  auto g = singleton_lemma_gadget();
  EXPECT_EQ(classify_fragment(g.formula), FragmentTag::MLSC);
  auto vs = vars(g.formula);
  for (const char* n : {"x", "x'", "y", "y'"}) EXPECT_TRUE(vs.count(n)) << n;
  for (const auto& n : vs)
    if (n != "x" && n != "x'" && n != "y" && n != "y'") EXPECT_EQ(n.rfind("_v", 0), 0u) << n;
}

TEST(Card, SemanticExamples) {
  auto g = card_eq_gadget("x", "y", GadgetMode::Semantic);
  SearchConfig cfg;
  cfg.rank_bound = 5;
  cfg.hereditary_card_cap = 2;
  cfg.var_domains["x"] = {hf("{{}}")};
  cfg.var_domains["y"] = {hf("{{{}}}")};
  auto rep = solve_bounded(g.formula, cfg);
  ASSERT_EQ(rep.status, ModelReport::Status::Sat);
  EXPECT_EQ(rep.model->at("y'").size(), 1u);
  cfg.var_domains["x"] = {HfSet{}};
  cfg.var_domains["y"] = {HfSet{}};
  rep = solve_bounded(g.formula, cfg);
  ASSERT_EQ(rep.status, ModelReport::Status::Sat);
  EXPECT_TRUE(rep.model->at("z").empty());
}

TEST(Card, SemanticModelsKeepSidesApart) {
  auto g = card_eq_gadget("x", "y", GadgetMode::Semantic);
  SearchConfig cfg;
  cfg.rank_bound = 2;
  cfg.per_var_card_cap = 3;
  for (const auto& m : enumerate_models(g.formula, cfg)) {
    EXPECT_TRUE(set_inter(m.at("x"), m.at("y'")).empty());
    EXPECT_EQ(m.at("y").size(), m.at("y'").size());
    EXPECT_TRUE(g.claimed_property(m));
  }
}

TEST(Card, LiteralModeUsesUnorderedProducts) {
  auto g = card_eq_gadget("x", "y", GadgetMode::Literal);
  EXPECT_EQ(classify_fragment(g.formula), FragmentTag::MLSCNOTORD_DU);
  EXPECT_TRUE(vars(g.formula).count("t"));
}

TEST(Finite, EmptyGivesFirstChainPair) {
  auto g = finite_gadget("x", GadgetMode::Semantic);
  SearchConfig cfg;
  cfg.rank_bound = 3;
  cfg.per_var_card_cap = 3;
  cfg.var_domains["x"] = {HfSet{}};
  auto models = enumerate_models(g.formula, cfg);
  ASSERT_FALSE(models.empty());
  for (const auto& m : models) {
    EXPECT_TRUE(m.at("w").empty());
    EXPECT_EQ(m.at("z"), HfSet::of({chain(0)[0]}));
  }
}

TEST(Finite, TwoElementsNeedTheSecondChainPair) {
  auto g = finite_gadget("x", GadgetMode::Semantic);
  auto expect = chain_assignment(2, "w", "z");
  Assignment m = expect;
  m["x"] = hf("{{},{{}}}");
  m["y"] = HfSet{};
  m["s"] = HfSet::singleton(m["x"]);
  m["y''"] = unord_prod(m["s"], m["w"]);
  // Match each element of x with one of y'' by hand.
  const auto xs = m["x"].elements();
  const auto ys = m["y''"].elements();
  ASSERT_EQ(xs.size(), ys.size());
  std::vector<HfSet> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) pairs.push_back(upair(xs[i], ys[i]));
  m["z'"] = HfSet::of(pairs);
  EXPECT_TRUE(eval_formula(m, g.formula));
  EXPECT_TRUE(g.claimed_property(m));
  m["z"] = HfSet::of(chain(1));
  EXPECT_FALSE(eval_formula(m, g.formula));
}

TEST(Finite, UnconstrainedInterfaceVariable) {
  auto g = finite_gadget("x", GadgetMode::Semantic);
  EXPECT_EQ(g.unconstrained_vars, std::vector<std::string>{"y"});
  EXPECT_FALSE(vars(g.formula).count("y"));
  EXPECT_TRUE(g.all_vars().count("y"));
}

TEST(Finite, ModelsEmbedChainPairs) {
  auto g = finite_gadget("x", GadgetMode::Semantic);
  SearchConfig cfg;
  cfg.rank_bound = 3;
  cfg.per_var_card_cap = 3;
  int n = 0;
  for (const auto& m : enumerate_models(g.formula, cfg)) {
    ++n;
    const HfSet& w = m.at("w");
    const HfSet& z = m.at("z");
    EXPECT_TRUE(is_chain_pair(w, z));
    EXPECT_EQ(set_diff(z, w).size(), 1u);
    EXPECT_TRUE(eval_formula(m, dichotomy_witness("w", "z").formula));
  }
  EXPECT_GT(n, 0);
}

TEST(Dichotomy, Examples) {
  auto g = dichotomy_witness();
  auto a = chain(3);
  EXPECT_TRUE(eval_formula(chain_assignment(0), g.formula));
  EXPECT_FALSE(eval_formula({{"y", HfSet::of({a[1]})}, {"z", HfSet::of({a[0], a[1]})}}, g.formula));
  EXPECT_EQ(chain_assignment(3).at("z").rank(), 5u);
  EXPECT_EQ(chain_assignment(2).at("z"), HfSet::of({a[0], a[1], a[2]}));
  EXPECT_TRUE(chain_assignment(0).at("y").empty());
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_TRUE(eval_formula(chain_assignment(k), g.formula)) << k;
}

TEST(Dichotomy, BoundedModelsAreChainPrefixes) {
  auto g = dichotomy_witness();
  SearchConfig cfg;
  cfg.rank_bound = 3;
  std::vector<Assignment> expect{chain_assignment(0), chain_assignment(1)};
  auto models = enumerate_models(g.formula, cfg);
  EXPECT_EQ(models, expect);
}

TEST(Property, GadgetsRoundTripAndCoverInterface) {
  for (const auto& g : all_gadgets()) {
    std::string text = print_formula(g.formula);
    EXPECT_EQ(parse_formula(text), g.formula) << g.name;
    auto vs = g.all_vars();
    for (const auto& n : g.interface_vars) EXPECT_TRUE(vs.count(n)) << g.name << ": " << n;
    EXPECT_FALSE(g.property_name.empty()) << g.name;
    EXPECT_TRUE(static_cast<bool>(g.claimed_property)) << g.name;
  }
}
