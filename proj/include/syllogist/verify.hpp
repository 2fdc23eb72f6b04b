#pragma once

// Brute-force checkers. Each one enumerates a finite case grid with the
// hf-core operations and the bounded solver and reports counterexamples.

#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "syllogist/gadgets.hpp"
#include "syllogist/hf.hpp"
#include "syllogist/semantics.hpp"
#include "syllogist/solver.hpp"

namespace syllogist {

struct VerdictFailure {
  std::string reason;
  Assignment assignment;
};

struct VerdictReport {
  enum class Status { Pass, Fail, Aborted };
  std::string claim;
  std::string universe;
  std::uint64_t cases_checked = 0;
  Status status = Status::Pass;
  std::vector<VerdictFailure> failures;
  std::string abort_reason;
  std::chrono::nanoseconds elapsed{0};
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  bool passed() const { return status == Status::Pass; }

  void fail(std::string reason, Assignment m = {}) {
    failures.push_back({std::move(reason), std::move(m)});
    if (status != Status::Aborted) status = Status::Fail;
  }
  void abort(std::string reason) {
    status = Status::Aborted;
    abort_reason = std::move(reason);
  }
};

inline const char* to_string(VerdictReport::Status s) {
  switch (s) {
    case VerdictReport::Status::Pass: return "PASS";
    case VerdictReport::Status::Fail: return "FAIL";
    default: return "ABORTED";
  }
}

inline int exit_code(const VerdictReport& r) {
  switch (r.status) {
    case VerdictReport::Status::Pass: return 0;
    case VerdictReport::Status::Fail: return 1;
    default: return 2;
  }
}

namespace detail {
class Stopwatch {
 public:
  explicit Stopwatch(VerdictReport& r) : r_(r), t0_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() { r_.elapsed = std::chrono::steady_clock::now() - t0_; }

 private:
  VerdictReport& r_;
  std::chrono::steady_clock::time_point t0_;
};

inline std::vector<HfSet> sorted_unique(std::vector<HfSet> v) {
  std::sort(v.begin(), v.end(), ack_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline nlohmann::ordered_json assignment_json(const Assignment& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, val] : m) j[k] = val.to_string();
  return j;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Z = {0} (x) ({0} u Y) with Y strictly inside Z.

inline std::vector<HfSet> default_lemdich_universe() {
  std::vector<HfSet> u = level(3);
  auto c = chain(5);
  u.insert(u.end(), c.begin(), c.end());
  return detail::sorted_unique(u);
}

/// For every Y included in `universe`, computes Z = {0} (x) ({0} u Y) and,
/// when Y is strictly included in Z, checks |Z \ Y| = 1 and that
/// (Y, Z) = ({a_l : l < k}, {a_l : l <= k}) for k = |Y|.
inline VerdictReport verify_lemdich(std::vector<HfSet> universe = default_lemdich_universe(), unsigned jobs = 1) {
  VerdictReport r;
  detail::Stopwatch sw(r);
  universe = detail::sorted_unique(std::move(universe));
  r.claim = "lemdich";
  r.universe = "subsets of " + std::to_string(universe.size()) + " sets";
  if (universe.size() > 24) throw CapExceeded("verify_lemdich: universe above 24 sets");
  const HfSet e = HfSet::singleton(HfSet{});
  const std::uint64_t count = std::uint64_t{1} << universe.size();
  jobs = std::max(1u, jobs);

  struct Slice {
    std::uint64_t premises = 0;
    std::vector<VerdictFailure> failures;
  };
  std::vector<Slice> slices(jobs);
  auto work = [&](unsigned w) {
    for (std::uint64_t mask = count * w / jobs; mask < count * (w + 1) / jobs; ++mask) {
      HfSet y = detail::subset_by_mask(universe, mask);
      HfSet z = unord_prod(e, set_union(e, y));
      if (!(y.is_subset_of(z) && y != z)) continue;
      ++slices[w].premises;
      Assignment m{{"y", y}, {"z", z}};
      if (set_diff(z, y).size() != 1) slices[w].failures.push_back({"|Z \\ Y| != 1", m});
      else if (!is_chain_pair(y, z)) slices[w].failures.push_back({"(Y, Z) is not a chain pair", m});
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::jthread> ts;
    for (unsigned w = 0; w < jobs; ++w) ts.emplace_back(work, w);
  }
  std::uint64_t premises = 0;
  for (auto& s : slices) {
    premises += s.premises;
    for (auto& f : s.failures) r.fail(std::move(f.reason), std::move(f.assignment));
  }
  r.cases_checked = count;
  r.details["premise_holds"] = premises;
  return r;
}

// ---------------------------------------------------------------------------
// Bounded models of the dichotomy witness.

/// Compares the bounded model set of the dichotomy witness with the chain
/// pairs of rank <= rank_bound, and checks that model ranks fill 2..rank_bound.
inline VerdictReport verify_corollary(std::size_t rank_bound, std::optional<std::size_t> card_cap = 6,
                                      unsigned jobs = 1, std::uint64_t candidate_cap = 1'000'000'000) {
  VerdictReport r;
  detail::Stopwatch sw(r);
  r.claim = "corollary";
  SearchConfig cfg;
  cfg.rank_bound = rank_bound;
  cfg.per_var_card_cap = card_cap;
  cfg.jobs = jobs;
  cfg.candidate_cap = candidate_cap;
  r.universe = describe_universe(cfg);
  auto g = dichotomy_witness();

  std::vector<Assignment> models;
  std::uint64_t candidates = 0;
  try {
    auto out = detail::run_search(g.formula, cfg, detail::SearchMode::All);
    candidates = out.candidates;
    if (out.aborted) {
      r.abort(out.abort_reason);
      return r;
    }
    for (const auto& idx : out.models) models.push_back(out.assignment(idx));
  } catch (const CapExceeded& e) {
    r.abort(e.what());
    return r;
  }
  r.cases_checked = candidates;

  // Expected: chain pairs whose values lie in the searched universe.
  auto universe = build_universe(cfg);
  auto contains = [&](const HfSet& s) { return std::binary_search(universe.begin(), universe.end(), s, ack_less); };
  std::vector<Assignment> expected;
  for (std::size_t k = 0; k + 2 <= rank_bound + 8; ++k) {
    auto m = chain_assignment(k);
    if (contains(m.at("y")) && contains(m.at("z"))) expected.push_back(m);
  }
  for (const auto& m : models)
    if (std::find(expected.begin(), expected.end(), m) == expected.end()) r.fail("model is not a chain pair", m);
  for (const auto& m : expected)
    if (std::find(models.begin(), models.end(), m) == models.end()) r.fail("chain pair is not a model", m);
  for (const auto& m : expected)
    if (m.at("z").rank() != m.at("y").size() + 2) r.fail("rk(Z) != k + 2", m);
  if (expected.size() + 1 != rank_bound) r.fail("universe does not hold every chain pair with k + 2 <= rank bound");

  std::set<std::size_t> ranks;
  for (const auto& m : models) ranks.insert(dom_rank(m, g.formula));
  std::set<std::size_t> want;
  for (std::size_t k = 2; k <= rank_bound; ++k) want.insert(k);
  if (ranks != want) r.fail("model ranks differ from 2..rank_bound");
  bool ceiling = !ranks.empty() && *ranks.rbegin() == rank_bound;
  if (!ceiling) r.fail("no model reaches the rank bound");

  nlohmann::ordered_json ks = nlohmann::ordered_json::array();
  for (const auto& m : models) ks.push_back(m.at("y").size());
  r.details["models"] = models.size();
  r.details["chain_lengths"] = ks;
  r.details["ranks"] = ranks;
  r.details["max_rank_hit_bound"] = ceiling;
  return r;
}

// ---------------------------------------------------------------------------
// Gadgets.

struct GadgetCheck {
  /// Interface values that must extend to a model (each entry fixes some variables).
  std::vector<Assignment> targets;
  /// Search configuration for realizability; defaults to the soundness one.
  std::optional<SearchConfig> target_cfg;
  bool require_model = false;
  /// Number of models copied into the report details.
  std::size_t record_models = 0;
};

/// Soundness: every bounded model satisfies the claimed property.
/// Realizability: each target extends to a bounded model.
inline VerdictReport verify_gadget(const GadgetSpec& g, const SearchConfig& cfg, const GadgetCheck& check = {}) {
  VerdictReport r;
  detail::Stopwatch sw(r);
  r.claim = "gadget:" + g.name;
  r.universe = describe_universe(cfg);
  std::set<std::string> extra(g.unconstrained_vars.begin(), g.unconstrained_vars.end());

  std::size_t models = 0;
  nlohmann::ordered_json recorded = nlohmann::ordered_json::array();
  try {
    auto out = detail::run_search(g.formula, cfg, detail::SearchMode::All, extra);
    r.cases_checked = out.candidates;
    if (out.aborted) {
      r.abort(out.abort_reason);
      return r;
    }
    for (const auto& idx : out.models) {
      Assignment m = out.assignment(idx);
      ++models;
      if (recorded.size() < check.record_models) recorded.push_back(detail::assignment_json(m));
      if (!eval_formula(m, g.formula)) throw Error("verify_gadget: solver returned a non-model");
      if (!g.claimed_property(m)) r.fail("model violates " + g.property_name, m);
    }
  } catch (const CapExceeded& e) {
    r.abort(e.what());
    return r;
  }
  if (check.require_model && models == 0) r.fail("no bounded model");

  std::size_t realized = 0;
  for (const auto& target : check.targets) {
    SearchConfig tcfg = check.target_cfg.value_or(cfg);
    for (const auto& [name, value] : target) tcfg.var_domains[name] = {value};
    tcfg.deterministic = false;
    auto rep = solve_bounded(g.formula, tcfg, extra);
    r.cases_checked += rep.candidates_examined;
    if (rep.status == ModelReport::Status::Sat) ++realized;
    else if (rep.status == ModelReport::Status::Aborted) r.abort("realizability search: " + rep.abort_reason);
    else r.fail("target has no bounded extension", target);
  }
  r.details["models"] = models;
  if (!check.targets.empty()) {
    r.details["targets"] = check.targets.size();
    r.details["targets_realized"] = realized;
  }
  if (check.record_models) r.details["model_list"] = recorded;
  return r;
}

// ---------------------------------------------------------------------------
// Ordering.

/// Totality, transitivity and asymmetry of the Ackermann order on V_4, each
/// set above its members and proper subsets, and agreement of ack_less with
/// numeric Ackermann codes there.
inline VerdictReport verify_ordering() {
  VerdictReport r;
  detail::Stopwatch sw(r);
  r.claim = "ordering";
  const auto& v4 = level(4);
  r.universe = "V_4 (" + std::to_string(v4.size()) + " sets)";
  std::vector<AckCode> codes;
  for (const auto& a : v4) codes.push_back(ack_code(a));
  std::uint64_t antisymmetry = 0;
  for (std::size_t i = 0; i < v4.size(); ++i) {
    const auto& a = v4[i];
    for (std::size_t j = 0; j < v4.size(); ++j) {
      const auto& b = v4[j];
      ++r.cases_checked;
      bool ab = ack_less(a, b), ba = ack_less(b, a);
      if (ab && ba) ++antisymmetry;
      if (!ab && !ba && a != b) r.fail("incomparable pair", {{"a", a}, {"b", b}});
      if ((a == b) && (ab || ba)) r.fail("irreflexivity", {{"a", a}});
      if (ab != (codes[i] < codes[j])) r.fail("ack_less disagrees with ack_code", {{"a", a}, {"b", b}});
      if (!ab) continue;
      for (const auto& c : v4)
        if (ack_less(b, c) && !ack_less(a, c)) r.fail("transitivity", {{"a", a}, {"b", b}, {"c", c}});
    }
    for (const auto& e : a.elements())
      if (!ack_less(e, a)) r.fail("member not below set", {{"h", a}, {"h'", e}});
    const std::uint64_t full = (std::uint64_t{1} << a.size()) - 1;
    for (std::uint64_t mask = 0; mask < full; ++mask) {
      HfSet p = detail::subset_by_mask(a.elements(), mask);
      if (!ack_less(p, a)) r.fail("proper subset not below set", {{"h", a}, {"h''", p}});
    }
  }
  if (antisymmetry) r.fail("antisymmetry");
  r.details["antisymmetry_witnesses"] = antisymmetry;
  return r;
}

// ---------------------------------------------------------------------------
// Individual gadget claims.

/// Faithfulness of the representing formula of h: every bounded model maps
/// each xs_N to its singleton, and a model exists.
inline VerdictReport verify_repr(const HfSet& h, std::size_t rank_bound = 4) {
  SearchConfig cfg;
  cfg.rank_bound = rank_bound;
  auto r = verify_gadget(repr_formula(h), cfg, {.require_model = true});
  r.claim = "repr:" + h.to_string();
  return r;
}

/// Compares the P* term with powast on every tuple of arity 0..max_arity
/// drawn from `pool`.
inline VerdictReport verify_powast(const std::vector<HfSet>& pool, std::size_t max_arity = 3) {
  VerdictReport r;
  detail::Stopwatch sw(r);
  r.claim = "powast";
  r.universe = "tuples over " + std::to_string(pool.size()) + " sets, arity <= " + std::to_string(max_arity);
  for (std::size_t k = 0; k <= max_arity; ++k) {
    auto g = powast_expression(k);
    Term term = g.formula.terms()[1];
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      Assignment m;
      std::vector<HfSet> args;
      for (std::size_t i = 0; i < k; ++i) {
        args.push_back(pool[idx[i]]);
        m["y" + std::to_string(i + 1)] = pool[idx[i]];
      }
      ++r.cases_checked;
      HfSet got = eval_term(m, term);
      if (got != powast(args)) r.fail("term differs from powast", m);
      bool any_empty = std::any_of(args.begin(), args.end(), [](const HfSet& s) { return s.empty(); });
      if (any_empty != got.empty()) r.fail("emptiness differs from some argument being empty", m);
      std::size_t i = 0;
      while (i < k && ++idx[i] == pool.size()) idx[i++] = 0;
      if (i == k) break;
    }
  }
  return r;
}

/// For each value of x, exactly one extension over the universe
/// V_4 u {expected values and their transitive closures} satisfies the
/// alpha/beta conjunction, and it is the expected one.
inline VerdictReport verify_alphabeta(const std::vector<HfSet>& xs) {
  VerdictReport r;
  detail::Stopwatch sw(r);
  r.claim = "alphabeta";
  r.universe = "V_4 plus transitive closure of the expected extension";
  auto g = singleton_alphabeta();
  for (const auto& x : xs) {
    auto expected = alphabeta_extension(x);
    std::vector<HfSet> u = level(4);
    for (const auto& [name, val] : expected) {
      u.push_back(val);
      auto tc = transitive_closure(val);
      u.insert(u.end(), tc.begin(), tc.end());
    }
    SearchConfig cfg;
    cfg.universe_override = detail::sorted_unique(u);
    cfg.var_domains["x"] = {x};
    std::vector<Assignment> models;
    try {
      models = enumerate_models(g.formula, cfg);
    } catch (const SearchAborted& e) {
      r.abort(e.what());
      return r;
    }
    r.cases_checked += models.size();
    if (models.size() != 1) r.fail("expected exactly one extension, found " + std::to_string(models.size()), {{"x", x}});
    for (const auto& m : models)
      if (m != expected) r.fail("extension differs from closed form", m);
    if (!models.empty() && models[0].at("z").rank() != x.rank() + 4) r.fail("rk(z) != rk(x) + 4", models[0]);
  }
  return r;
}

/// Card gadget: soundness over `cfg` (|x| = |y| and x disjoint from y'),
/// and realizability of every pair (A, B) from `pairs` with |A| = |B|.
inline VerdictReport verify_card_gadget(GadgetMode mode, const SearchConfig& cfg, const std::vector<HfSet>& pairs,
                                        const SearchConfig& target_cfg) {
  auto g = card_eq_gadget("x", "y", mode);
  auto property = g.claimed_property;
  g.claimed_property = [property](const Assignment& m) {
    return property(m) && set_inter(lookup(m, "x"), lookup(m, "y'")).empty() &&
           lookup(m, "y").size() == lookup(m, "y'").size();
  };
  g.property_name = "|x| = |y|, x disjoint from y', |y| = |y'|";
  GadgetCheck check;
  for (const auto& a : pairs)
    for (const auto& b : pairs)
      if (a.size() == b.size()) check.targets.push_back({{"x", a}, {"y", b}});
  check.target_cfg = target_cfg;
  auto r = verify_gadget(g, cfg, check);
  r.claim = std::string("card-eq:") + to_string(mode);
  return r;
}

/// Finite gadget: every bounded model has (w, z) a chain pair and |x| = |w|,
/// and each listed chain length k is realized by some model.
inline VerdictReport verify_finite_gadget(GadgetMode mode, const SearchConfig& cfg,
                                          const std::vector<std::size_t>& realize = {}) {
  auto g = finite_gadget("x", mode);
  GadgetCheck check;
  for (auto k : realize) check.targets.push_back(chain_assignment(k, "w", "z"));
  auto r = verify_gadget(g, cfg, check);
  r.claim = std::string("finite:") + to_string(mode);
  return r;
}

/// Runs the singleton-lemma literals through the solver and records every
/// model found.
inline VerdictReport audit_singleton_lemma(const SearchConfig& cfg) {
  auto g = singleton_lemma_gadget();
  auto r = verify_gadget(g, cfg, {.record_models = 64});
  r.claim = "singleton-lemma-audit";
  r.details["formula"] = print_formula(g.formula);
  return r;
}

inline SearchConfig singleton_audit_config() {
  SearchConfig cfg;
  cfg.rank_bound = 5;
  cfg.hereditary_card_cap = 2;
  return cfg;
}

/// Bounded check that models of `f` satisfying the ordinal condition exist
/// exactly when some bounded model does, reported with the rank sets seen.
inline VerdictReport verify_ordinal_condition(const Formula& f, const SearchConfig& cfg) {
  VerdictReport r;
  detail::Stopwatch sw(r);
  r.claim = "ordinal-condition";
  r.universe = describe_universe(cfg);
  std::size_t models = 0, ordinal = 0;
  try {
    r.cases_checked = for_each_model(f, cfg, [&](const Assignment& m) {
      ++models;
      ordinal += ordinal_condition(m, f);
    });
  } catch (const SearchAborted& e) {
    r.abort(e.what());
    return r;
  }
  r.details["models"] = models;
  r.details["ordinal_models"] = ordinal;
  return r;
}

}  // namespace syllogist
