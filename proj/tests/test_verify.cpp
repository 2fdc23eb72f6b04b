#include <gtest/gtest.h>

#include "syllogist/io.hpp"
#include "syllogist/verify.hpp"

using namespace syllogist;

namespace {

HfSet hf(const char* s) { return parse_hf(s); }

// a_0 = {0}, a_{n+1} = {0, a_n}, built without the library helper.
std::vector<HfSet> my_chain(std::size_t k) {
  std::vector<HfSet> out{HfSet::of({HfSet{}})};
  while (out.size() <= k) out.push_back(HfSet::of({HfSet{}, out.back()}));
  return out;
}

// Z = {{0}} u {{0, y} : y in Y}, computed directly.
HfSet lemdich_z(const HfSet& y) {
  std::vector<HfSet> out{HfSet::of({HfSet{}})};
  for (const auto& e : y.elements()) out.push_back(HfSet::of({HfSet{}, e}));
  return HfSet::of(out);
}

}  // namespace

TEST(Lemdich, DefaultUniverse) {
  auto u = default_lemdich_universe();
  ASSERT_EQ(u.size(), 8u);
  auto r = verify_lemdich(u);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases_checked, 256u);

  // Oracle: recount the premise by hand.
  std::uint64_t premises = 0;
  for (std::uint64_t mask = 0; mask < 256; ++mask) {
    std::vector<HfSet> ys;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (mask >> i & 1) ys.push_back(u[i]);
    HfSet y = HfSet::of(ys), z = lemdich_z(y);
    if (y.is_subset_of(z) && y != z) ++premises;
  }
  EXPECT_EQ(premises, 7u);
  EXPECT_EQ(r.details["premise_holds"].get<std::uint64_t>(), premises);
}

TEST(Lemdich, ParallelMatchesSerial) {
  auto a = verify_lemdich(default_lemdich_universe(), 1);
  auto b = verify_lemdich(default_lemdich_universe(), 3);
  EXPECT_EQ(to_json(a, true), to_json(b, true));
}

TEST(Lemdich, ChainPremisesHold) {
  auto c = my_chain(4);
  for (std::size_t k = 0; k <= 4; ++k) {
    HfSet y = HfSet::of(std::vector<HfSet>(c.begin(), c.begin() + static_cast<long>(k)));
    HfSet z = lemdich_z(y);
    EXPECT_EQ(z, HfSet::of(std::vector<HfSet>(c.begin(), c.begin() + static_cast<long>(k) + 1)));
    EXPECT_EQ(unord_prod(HfSet::of({HfSet{}}), set_union(HfSet::of({HfSet{}}), y)), z);
  }
}

TEST(Lemdich, UniverseCap) {
  EXPECT_THROW(verify_lemdich(rank_universe(4, 2)), CapExceeded);
}

TEST(Corollary, BoundThree) {
  auto r = verify_corollary(3);
  ASSERT_TRUE(r.passed()) << to_json(r, true).dump();
  EXPECT_EQ(r.details["models"].get<std::size_t>(), 2u);
  EXPECT_EQ(r.details["chain_lengths"], nlohmann::ordered_json::parse("[0,1]"));
  EXPECT_TRUE(r.details["max_rank_hit_bound"].get<bool>());
}

TEST(Corollary, BoundFour) {
  auto r = verify_corollary(4);
  ASSERT_TRUE(r.passed()) << to_json(r, true).dump();
  EXPECT_EQ(r.details["models"].get<std::size_t>(), 3u);
  EXPECT_EQ(r.details["ranks"], nlohmann::ordered_json::parse("[2,3,4]"));
}

TEST(Corollary, AbortsUnderTinyCap) {
  auto r = verify_corollary(4, 6, 1, 10);
  EXPECT_EQ(r.status, VerdictReport::Status::Aborted);
  EXPECT_EQ(exit_code(r), 2);
}

TEST(Ordering, Passes) {
  auto r = verify_ordering();
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases_checked, 16u * 16u);
  EXPECT_EQ(r.details["antisymmetry_witnesses"].get<std::uint64_t>(), 0u);
}

TEST(Repr, SmallSets) {
  for (const char* s : {"{}", "{{}}", "{{{}}}", "{{},{{}}}"}) {
    auto r = verify_repr(hf(s), 3);
    EXPECT_TRUE(r.passed()) << s << " " << to_json(r, true).dump();
    EXPECT_EQ(r.claim, std::string("repr:") + hf(s).to_string());
  }
}

TEST(Powast, LevelTwoPool) {
  auto r = verify_powast(level(2), 2);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.cases_checked, 1u + 2u + 4u);
}

TEST(AlphaBeta, FewValues) {
  auto r = verify_alphabeta({HfSet{}, hf("{{}}")});
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump();
  EXPECT_EQ(r.cases_checked, 2u);
}

TEST(CardGadget, SemanticSmall) {
  SearchConfig cfg;
  cfg.rank_bound = 2;
  cfg.per_var_card_cap = 2;
  SearchConfig tcfg;
  tcfg.rank_bound = 5;
  tcfg.hereditary_card_cap = 2;
  auto r = verify_card_gadget(GadgetMode::Semantic, cfg, {HfSet{}, hf("{{}}")}, tcfg);
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump();
  EXPECT_EQ(r.details["targets"].get<std::size_t>(), 2u);
  EXPECT_EQ(r.details["targets_realized"].get<std::size_t>(), 2u);
}

TEST(FiniteGadget, SemanticRankThree) {
  SearchConfig cfg;
  cfg.rank_bound = 3;
  cfg.per_var_card_cap = 3;
  auto r = verify_finite_gadget(GadgetMode::Semantic, cfg, {0});
  EXPECT_TRUE(r.passed()) << to_json(r, true).dump();
  EXPECT_GT(r.details["models"].get<std::size_t>(), 0u);
}

TEST(SingletonAudit, DeterministicAndEmpty) {
  auto a = audit_singleton_lemma(singleton_audit_config());
  auto b = audit_singleton_lemma(singleton_audit_config());
  EXPECT_EQ(to_json(a, true).dump(), to_json(b, true).dump());
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.details["models"].get<std::size_t>(), 0u);
  EXPECT_FALSE(to_json(a, true).contains("elapsed_ms"));
  EXPECT_TRUE(to_json(a, false).contains("elapsed_ms"));
}

TEST(Report, FailuresCarryViolatingAssignments) {
  // A gadget whose claimed property is false on some of its models.
  GadgetSpec g("bogus", parse_formula("x sub y"));
  g.property_name = "x = y";
  g.claimed_property = [](const Assignment& m) { return m.at("x") == m.at("y"); };
  SearchConfig cfg;
  cfg.rank_bound = 2;
  auto r = verify_gadget(g, cfg);
  ASSERT_EQ(r.status, VerdictReport::Status::Fail);
  EXPECT_EQ(exit_code(r), 1);
  // x sub y over four values: 9 models, 4 with x = y.
  EXPECT_EQ(r.failures.size(), 5u);
  for (const auto& f : r.failures) {
    EXPECT_TRUE(eval_formula(f.assignment, g.formula));
    EXPECT_FALSE(g.claimed_property(f.assignment));
  }
}

TEST(Report, AbortIsSticky) {
  VerdictReport r;
  r.abort("cap");
  r.fail("late failure");
  EXPECT_EQ(r.status, VerdictReport::Status::Aborted);
  EXPECT_EQ(exit_code(r), 2);
  EXPECT_STREQ(to_string(r.status), "ABORTED");
}

TEST(Report, JsonShape) {
  auto r = verify_powast(level(1), 1);
  auto j = to_json(r, true);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"claim", "universe", "cases_checked", "status", "failures", "details"}));
  EXPECT_EQ(j["status"], "PASS");
}
