#pragma once

// Bounded model search.
//
// A search assigns every variable of a formula a value from a finite domain
// (by default the sets of rank <= rank_bound) and reports the assignments
// under which the formula holds. It is exhaustive over the grid of
// assignments, with shortcuts that never change the set of models:
//   - each top-level conjunct is evaluated once all its variables are bound,
//     and subterms are cached while their variables keep their values;
//   - a conjunct `v = t` with t over earlier variables fixes v by lookup;
//   - a dead end jumps back to the latest variable sharing a conjunct with
//     the failure, skipping values that cannot matter.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "syllogist/hf.hpp"
#include "syllogist/semantics.hpp"
#include "syllogist/syntax.hpp"

namespace syllogist {

struct SearchConfig {
  /// Values range over sets of rank <= rank_bound (members from level(rank_bound)).
  std::size_t rank_bound = 2;
  std::optional<std::size_t> per_var_card_cap;
  /// Restricts the universe to sets whose hereditary members all have at
  /// most this many members.
  std::optional<std::size_t> hereditary_card_cap;
  std::optional<std::vector<HfSet>> universe_override;
  /// Per-variable domains replacing the universe (a single value fixes a variable).
  std::map<std::string, std::vector<HfSet>> var_domains;
  std::uint64_t candidate_cap = 100'000'000;
  bool deterministic = true;
  unsigned jobs = 1;
};

/// The shared value domain described by `cfg`, in increasing order.
inline std::vector<HfSet> build_universe(const SearchConfig& cfg) {
  std::size_t card = cfg.per_var_card_cap.value_or(SIZE_MAX);
  std::vector<HfSet> u;
  if (cfg.universe_override) {
    u = *cfg.universe_override;
    std::sort(u.begin(), u.end(), ack_less);
    u.erase(std::unique(u.begin(), u.end()), u.end());
  } else if (cfg.hereditary_card_cap) {
    u = hereditary_universe(cfg.rank_bound, *cfg.hereditary_card_cap);
  } else {
    return rank_universe(cfg.rank_bound, card);
  }
  std::erase_if(u, [card](const HfSet& s) { return s.size() > card; });
  return u;
}

inline std::string describe_universe(const SearchConfig& cfg) {
  std::string d;
  if (cfg.universe_override) {
    d = "explicit universe of " + std::to_string(cfg.universe_override->size()) + " sets";
  } else {
    d = "sets of rank <= " + std::to_string(cfg.rank_bound);
    if (cfg.hereditary_card_cap) d += ", hereditary cardinality <= " + std::to_string(*cfg.hereditary_card_cap);
  }
  if (cfg.per_var_card_cap) d += ", cardinality <= " + std::to_string(*cfg.per_var_card_cap);
  if (!cfg.var_domains.empty()) d += ", " + std::to_string(cfg.var_domains.size()) + " variable(s) with own domain";
  return d;
}

struct ModelReport {
  enum class Status { Sat, UnsatWithinBound, Aborted };
  Status status = Status::UnsatWithinBound;
  std::optional<Assignment> model;
  std::string abort_reason;
  std::uint64_t candidates_examined = 0;
  std::chrono::nanoseconds elapsed{0};
};

inline const char* to_string(ModelReport::Status s) {
  switch (s) {
    case ModelReport::Status::Sat: return "sat";
    case ModelReport::Status::UnsatWithinBound: return "unsat_within_bound";
    default: return "aborted";
  }
}

namespace detail {

// Terms and formulas compiled against a fixed variable order. Each compiled
// term caches its value, tagged with the stamp of the deepest variable it
// depends on; the stamp changes whenever that variable is reassigned.
class SearchPlan {
 public:
  SearchPlan(const Formula& f, std::vector<std::string> order, std::vector<std::vector<HfSet>> domains)
      : order_(std::move(order)), domains_(std::move(domains)) {
    for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = static_cast<int>(i);
    by_level_.resize(order_.size());
    for (const auto& c : conjuncts(f)) {
      int root = compile(c);
      int lvl = formulas_[root].level;
      (lvl < 0 ? closed_ : by_level_[lvl]).push_back(root);
    }
    values_.assign(order_.size(), nullptr);
    stamps_.assign(order_.size() + 1, 0);
    index_.assign(order_.size(), 0);
    defining_.assign(order_.size(), -1);
    for (std::size_t pos = 0; pos < order_.size(); ++pos)
      for (int root : by_level_[pos]) {
        const CFormula& c = formulas_[root];
        if (c.kind != FormulaKind::Eq) continue;
        for (int side = 0; side < 2 && defining_[pos] < 0; ++side) {
          const CTerm& lhs = terms_[c.terms[side]];
          if (lhs.kind == TermKind::Var && lhs.var == static_cast<int>(pos) &&
              terms_[c.terms[1 - side]].level < static_cast<int>(pos))
            defining_[pos] = c.terms[1 - side];
        }
      }
    parents_.resize(order_.size());
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      std::set<int> ps;
      for (int root : by_level_[pos]) collect_formula_vars(root, ps);
      ps.erase(static_cast<int>(pos));
      parents_[pos].assign(ps.begin(), ps.end());
    }
  }

  static constexpr std::size_t npos = SIZE_MAX;

  std::size_t size() const { return order_.size(); }
  const std::vector<std::string>& order() const { return order_; }
  const std::vector<HfSet>& domain(std::size_t pos) const { return domains_[pos]; }
  const std::vector<std::size_t>& indices() const { return index_; }

  /// False when a closed conjunct fails.
  bool check_closed() { return check(closed_); }

  /// Earlier positions sharing a conjunct completed at `pos`.
  const std::vector<int>& parents(std::size_t pos) const { return parents_[pos]; }

  /// True when a conjunct `v = t` fixes the variable at `pos` from earlier ones.
  bool has_definition(std::size_t pos) const { return defining_[pos] >= 0; }

  /// Domain index of the value forced by the defining conjunct; npos when
  /// that value is undefined or outside the domain. Every other domain value
  /// would falsify the conjunct.
  std::size_t forced_index(std::size_t pos) {
    try {
      const HfSet& v = eval(defining_[pos]);
      const auto& d = domains_[pos];
      auto it = std::lower_bound(d.begin(), d.end(), v, ack_less);
      if (it != d.end() && *it == v) return static_cast<std::size_t>(it - d.begin());
    } catch (const EmptyIntersection&) {
    }
    return npos;
  }

  /// Binds position `pos` to its `idx`-th domain value and checks the
  /// conjuncts completed by it.
  bool assign(std::size_t pos, std::size_t idx) {
    values_[pos] = &domains_[pos][idx];
    index_[pos] = idx;
    stamps_[pos + 1] = ++clock_;
    return check(by_level_[pos]);
  }

 private:
  struct CTerm {
    TermKind kind;
    int var = -1;
    std::vector<int> args;
    int level = -1;
    std::uint64_t stamp = UINT64_MAX;
    bool error = false;
    HfSet value;
  };
  struct CFormula {
    FormulaKind kind;
    std::vector<int> terms;
    std::vector<int> subs;
    int level = -1;
  };

  int compile(const Term& t) {
    std::string key = print_term(t);
    if (auto it = term_ids_.find(key); it != term_ids_.end()) return it->second;
    CTerm ct{t.kind()};
    if (t.kind() == TermKind::Var) {
      ct.var = position_.at(t.name());
      ct.level = ct.var;
    }
    for (const auto& a : t.args()) {
      int id = compile(a);
      ct.args.push_back(id);
      ct.level = std::max(ct.level, terms_[id].level);
    }
    terms_.push_back(std::move(ct));
    int id = static_cast<int>(terms_.size() - 1);
    term_ids_.emplace(std::move(key), id);
    return id;
  }

  int compile(const Formula& f) {
    CFormula cf{f.kind()};
    for (const auto& t : f.terms()) {
      int id = compile(t);
      cf.terms.push_back(id);
      cf.level = std::max(cf.level, terms_[id].level);
    }
    for (const auto& g : f.subs()) {
      int id = compile(g);
      cf.subs.push_back(id);
      cf.level = std::max(cf.level, formulas_[id].level);
    }
    formulas_.push_back(std::move(cf));
    return static_cast<int>(formulas_.size() - 1);
  }

  const HfSet& eval(int id) {
    CTerm& t = terms_[id];
    if (t.kind == TermKind::Var) return *values_[t.var];
    const std::uint64_t stamp = stamps_[t.level + 1];
    if (t.stamp == stamp) {
      if (t.error) throw EmptyIntersection();
      return t.value;
    }
    t.error = false;
    t.stamp = stamp;
    try {
      t.value = compute(t);
    } catch (const EmptyIntersection&) {
      t.error = true;
      throw;
    } catch (...) {
      t.stamp = UINT64_MAX;
      throw;
    }
    return t.value;
  }

  HfSet compute(const CTerm& t) {
    const auto& a = t.args;
    switch (t.kind) {
      case TermKind::Empty: return {};
      case TermKind::Union: return set_union(eval(a[0]), eval(a[1]));
      case TermKind::Inter: return set_inter(eval(a[0]), eval(a[1]));
      case TermKind::Diff: return set_diff(eval(a[0]), eval(a[1]));
      case TermKind::Cross: return cart_prod(eval(a[0]), eval(a[1]));
      case TermKind::UCross: return unord_prod(eval(a[0]), eval(a[1]));
      case TermKind::Pow: return powerset(eval(a[0]));
      case TermKind::BigUnion: return big_union(eval(a[0]));
      case TermKind::BigInter: return big_inter(eval(a[0]));
      case TermKind::DisjUnion: return disj_union(eval(a[0]));
      case TermKind::Display: {
        std::vector<HfSet> items;
        for (int x : a) items.push_back(eval(x));
        return HfSet::of(std::move(items));
      }
      default: throw Error("compute: unexpected term kind");
    }
  }

  bool holds(int id) {
    const CFormula& f = formulas_[id];
    switch (f.kind) {
      case FormulaKind::Mem: {
        const HfSet& lhs = eval(f.terms[0]);
        return eval(f.terms[1]).contains(lhs);
      }
      case FormulaKind::Eq: {
        const HfSet& lhs = eval(f.terms[0]);
        return lhs == eval(f.terms[1]);
      }
      case FormulaKind::Sub: {
        const HfSet& lhs = eval(f.terms[0]);
        return lhs.is_subset_of(eval(f.terms[1]));
      }
      case FormulaKind::Finite: eval(f.terms[0]); return true;
      case FormulaKind::Not: return !holds(f.subs[0]);
      case FormulaKind::And: return holds(f.subs[0]) && holds(f.subs[1]);
      case FormulaKind::Or: return holds(f.subs[0]) || holds(f.subs[1]);
      case FormulaKind::Implies: return !holds(f.subs[0]) || holds(f.subs[1]);
      case FormulaKind::Iff: return holds(f.subs[0]) == holds(f.subs[1]);
    }
    return false;
  }

  void collect_term_vars(int id, std::set<int>& out) const {
    const CTerm& t = terms_[id];
    if (t.kind == TermKind::Var) out.insert(t.var);
    for (int a : t.args) collect_term_vars(a, out);
  }

  void collect_formula_vars(int id, std::set<int>& out) const {
    const CFormula& f = formulas_[id];
    for (int t : f.terms) collect_term_vars(t, out);
    for (int g : f.subs) collect_formula_vars(g, out);
  }

  // An undefined intersection makes the candidate a non-model.
  bool check(const std::vector<int>& roots) {
    try {
      for (int r : roots)
        if (!holds(r)) return false;
      return true;
    } catch (const EmptyIntersection&) {
      return false;
    }
  }

  std::vector<std::string> order_;
  std::vector<std::vector<HfSet>> domains_;
  std::map<std::string, int> position_;
  std::vector<CTerm> terms_;
  std::vector<CFormula> formulas_;
  std::unordered_map<std::string, int> term_ids_;
  std::vector<int> closed_;
  std::vector<std::vector<int>> by_level_;
  std::vector<const HfSet*> values_;
  std::vector<std::uint64_t> stamps_;
  std::vector<std::size_t> index_;
  std::vector<int> defining_;
  std::vector<std::vector<int>> parents_;
  std::uint64_t clock_ = 0;
};

/// Greedy variable order: fixed variables first, then repeatedly the variable
/// that a conjunct `v = t` determines from bound variables, else one that
/// occurs in such a `t`, preferring the one completing the most conjuncts, breaking ties by how many conjuncts it
/// shares with bound variables, by occurrence count, by smaller domain and
/// finally by name.
inline std::vector<std::string> choose_order(const Formula& f, const std::vector<std::string>& names,
                                             const std::map<std::string, std::size_t>& domain_size) {
  std::vector<std::set<std::string>> cvars;
  // (v, vars(t)) for conjuncts v = t or t = v with v not in t.
  std::vector<std::pair<std::string, std::set<std::string>>> defs;
  for (const auto& c : conjuncts(f)) {
    cvars.push_back(vars(c));
    if (c.kind() != FormulaKind::Eq) continue;
    for (int side = 0; side < 2; ++side) {
      const Term& lhs = c.terms()[side];
      if (lhs.kind() != TermKind::Var) continue;
      auto rhs = vars(c.terms()[1 - side]);
      if (!rhs.count(lhs.name())) defs.emplace_back(lhs.name(), std::move(rhs));
    }
  }
  std::set<std::string> bound;
  std::vector<std::string> order;
  for (const auto& n : names)
    if (domain_size.at(n) == 1) {
      order.push_back(n);
      bound.insert(n);
    }
  auto all_bound = [&](const std::set<std::string>& vs, const std::string& extra) {
    return std::all_of(vs.begin(), vs.end(), [&](const std::string& v) { return v == extra || bound.count(v); });
  };
  while (order.size() < names.size()) {
    const std::string* best = nullptr;
    using Score = std::tuple<bool, bool, std::size_t, std::size_t, std::size_t, long long>;
    Score best_score{};
    for (const auto& n : names) {
      if (bound.count(n)) continue;
      bool determined = std::any_of(defs.begin(), defs.end(), [&](const auto& d) {
        return d.first == n && all_bound(d.second, "");
      });
      bool feeds = std::any_of(defs.begin(), defs.end(), [&](const auto& d) {
        return !bound.count(d.first) && d.second.count(n);
      });
      std::size_t completes = 0, touches = 0, occurs = 0;
      for (const auto& vs : cvars) {
        if (!vs.count(n)) continue;
        ++occurs;
        completes += all_bound(vs, n);
        touches += std::any_of(vs.begin(), vs.end(), [&](const std::string& v) { return bound.count(v) > 0; });
      }
      Score score{determined, feeds, completes, touches, occurs, -static_cast<long long>(domain_size.at(n))};
      if (!best || score > best_score) {
        best = &n;
        best_score = score;
      }
    }
    order.push_back(*best);
    bound.insert(*best);
  }
  return order;
}

struct SearchOutcome {
  // Models as domain-index tuples in name order.
  std::vector<std::vector<std::size_t>> models;
  std::vector<std::string> names;
  std::vector<std::vector<HfSet>> domains;  // name order
  std::uint64_t candidates = 0;
  bool aborted = false;
  std::string abort_reason;

  Assignment assignment(const std::vector<std::size_t>& idx) const {
    Assignment m;
    for (std::size_t i = 0; i < names.size(); ++i) m.emplace(names[i], domains[i][idx[i]]);
    return m;
  }
};

enum class SearchMode { First, Least, All };

inline SearchOutcome run_search(const Formula& f, const SearchConfig& cfg, SearchMode mode,
                                const std::set<std::string>& extra_vars = {}) {
  std::set<std::string> name_set = vars(f);
  name_set.insert(extra_vars.begin(), extra_vars.end());
  std::vector<std::string> names(name_set.begin(), name_set.end());

  SearchOutcome out;
  out.names = names;
  std::optional<std::vector<HfSet>> universe;
  std::map<std::string, std::size_t> dsize;
  for (const auto& n : names) {
    auto it = cfg.var_domains.find(n);
    std::vector<HfSet> d;
    if (it != cfg.var_domains.end()) {
      d = it->second;
      std::sort(d.begin(), d.end(), ack_less);
      d.erase(std::unique(d.begin(), d.end()), d.end());
    } else {
      if (!universe) universe = build_universe(cfg);
      d = *universe;
    }
    dsize[n] = d.size();
    out.domains.push_back(std::move(d));
  }

  std::vector<std::string> order = choose_order(f, names, dsize);
  std::vector<std::size_t> name_pos;  // search position -> name index
  for (const auto& n : order) name_pos.push_back(std::lower_bound(names.begin(), names.end(), n) - names.begin());
  std::vector<std::vector<HfSet>> ordered_domains;
  for (auto p : name_pos) ordered_domains.push_back(out.domains[p]);

  // In name order the first model found is the least one.
  const bool least_is_first = order == names;
  const unsigned jobs = std::max(1u, cfg.jobs);
  const std::size_t top = names.empty() ? 1 : ordered_domains[0].size();

  std::atomic<std::uint64_t> shared_count{0};
  std::atomic<bool> stop_all{false};
  std::atomic<bool> aborted{false};

  struct WorkerResult {
    std::vector<std::vector<std::size_t>> models;
    std::uint64_t candidates = 0;
  };
  std::vector<WorkerResult> results(jobs);

  auto worker = [&](unsigned w) {
    std::size_t lo = top * w / jobs, hi = top * (w + 1) / jobs;
    if (lo >= hi) return;
    SearchPlan plan(f, order, ordered_domains);
    WorkerResult& res = results[w];
    std::uint64_t local = 0;
    bool stop = false;
    if (!plan.check_closed()) return;

    auto record = [&] {
      std::vector<std::size_t> idx(names.size());
      for (std::size_t p = 0; p < order.size(); ++p) idx[name_pos[p]] = plan.indices()[p];
      if (mode == SearchMode::Least && !res.models.empty()) {
        if (idx < res.models[0]) res.models[0] = std::move(idx);
      } else {
        res.models.push_back(std::move(idx));
      }
      if (mode == SearchMode::First) {
        stop = true;
        if (!cfg.deterministic) stop_all = true;
      }
      if (mode == SearchMode::Least && least_is_first) stop = true;
    };

    if (names.empty()) {
      ++local;
      record();
      res.candidates = local;
      return;
    }

    // Counts a candidate; false once the search must stop.
    auto tick = [&] {
      if ((++local & 0xfff) == 0) {
        std::uint64_t total = shared_count.fetch_add(0x1000) + 0x1000;
        if (total > cfg.candidate_cap) {
          aborted = true;
          stop_all = true;
        }
        if (stop_all) stop = true;
      }
      return !stop;
    };

    // Graph-based backjumping. When dfs(pos) finds no model, conflict[pos]
    // holds earlier positions whose current values already rule out every
    // extension; values of any position outside that set are skipped.
    const std::size_t words = (plan.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> conflict(plan.size(), std::vector<std::uint64_t>(words));
    auto has = [](const std::vector<std::uint64_t>& s, std::size_t p) { return (s[p >> 6] >> (p & 63)) & 1; };

    std::function<bool(std::size_t)> dfs = [&](std::size_t pos) {
      std::size_t begin = pos == 0 ? lo : 0;
      std::size_t end = pos == 0 ? hi : plan.domain(pos).size();
      auto& mine = conflict[pos];
      std::fill(mine.begin(), mine.end(), 0);
      for (int p : plan.parents(pos)) mine[p >> 6] |= std::uint64_t{1} << (p & 63);
      bool found = false;
      // True when the remaining values of pos need not be tried.
      auto visit = [&](std::size_t i) {
        if (!plan.assign(pos, i)) return false;
        if (pos + 1 == plan.size()) {
          record();
          found = true;
          return false;
        }
        if (dfs(pos + 1)) {
          found = true;
          return false;
        }
        const auto& child = conflict[pos + 1];
        if (!has(child, pos)) {
          mine = child;
          return true;
        }
        for (std::size_t w = 0; w < words; ++w) mine[w] |= child[w];
        return false;
      };
      if (plan.has_definition(pos)) {
        if (tick()) {
          std::size_t i = plan.forced_index(pos);
          if (i != SearchPlan::npos && i >= begin && i < end) visit(i);
        }
      } else {
        for (std::size_t i = begin; i < end && !stop; ++i) {
          if (!tick() || visit(i)) break;
        }
      }
      mine[pos >> 6] &= ~(std::uint64_t{1} << (pos & 63));
      return found || stop;
    };
    dfs(0);
    res.candidates = local;
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
  }

  for (auto& r : results) {
    out.candidates += r.candidates;
    for (auto& m : r.models) out.models.push_back(std::move(m));
  }
  if (aborted || out.candidates > cfg.candidate_cap) {
    out.aborted = true;
    out.abort_reason = "candidate cap of " + std::to_string(cfg.candidate_cap) + " exceeded";
  }
  std::sort(out.models.begin(), out.models.end());
  if (mode != SearchMode::All && out.models.size() > 1) out.models.resize(1);
  return out;
}

inline void self_check(const Formula& f, const Assignment& m) {
  if (!eval_formula(m, f)) throw Error("solver self-check failed: reported model does not satisfy formula");
}

}  // namespace detail

/// Searches for a model. With `deterministic` set, the least model in the
/// lexicographic order over variable names (values compared by the Ackermann
/// order) is returned; otherwise the first one found.
inline ModelReport solve_bounded(const Formula& f, const SearchConfig& cfg,
                                 const std::set<std::string>& extra_vars = {}) {
  auto t0 = std::chrono::steady_clock::now();
  ModelReport rep;
  try {
    auto out = detail::run_search(f, cfg, cfg.deterministic ? detail::SearchMode::Least : detail::SearchMode::First,
                                  extra_vars);
    rep.candidates_examined = out.candidates;
    if (!out.models.empty() && (!out.aborted || !cfg.deterministic)) {
      rep.status = ModelReport::Status::Sat;
      rep.model = out.assignment(out.models[0]);
      detail::self_check(f, *rep.model);
    } else if (out.aborted) {
      rep.status = ModelReport::Status::Aborted;
      rep.abort_reason = out.abort_reason;
    } else {
      rep.status = ModelReport::Status::UnsatWithinBound;
    }
  } catch (const CapExceeded& e) {
    rep.status = ModelReport::Status::Aborted;
    rep.abort_reason = e.what();
  }
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

/// Every model within the bound, in lexicographic order over variable names.
/// Throws SearchAborted when the candidate cap is hit or an operation
/// exceeds its cap.
inline std::vector<Assignment> enumerate_models(const Formula& f, const SearchConfig& cfg,
                                                const std::set<std::string>& extra_vars = {}) {
  detail::SearchOutcome out;
  try {
    out = detail::run_search(f, cfg, detail::SearchMode::All, extra_vars);
  } catch (const CapExceeded& e) {
    throw SearchAborted(e.what());
  }
  if (out.aborted) throw SearchAborted(out.abort_reason);
  std::vector<Assignment> models;
  models.reserve(out.models.size());
  for (const auto& idx : out.models) {
    models.push_back(out.assignment(idx));
    detail::self_check(f, models.back());
  }
  return models;
}

/// Calls `visit` for every model in lexicographic order; returns the number
/// of candidates examined.
inline std::uint64_t for_each_model(const Formula& f, const SearchConfig& cfg,
                                    const std::function<void(const Assignment&)>& visit) {
  detail::SearchOutcome out;
  try {
    out = detail::run_search(f, cfg, detail::SearchMode::All);
  } catch (const CapExceeded& e) {
    throw SearchAborted(e.what());
  }
  if (out.aborted) throw SearchAborted(out.abort_reason);
  for (const auto& idx : out.models) visit(out.assignment(idx));
  return out.candidates;
}

struct RankSpectrum {
  std::map<std::size_t, std::size_t> counts;  // dom_rank -> number of models
  bool all_models_finite = true;              // every HF model is finite
  bool max_rank_hit_bound = false;
  std::size_t bound = 0;
  std::uint64_t candidates_examined = 0;
};

inline RankSpectrum rank_spectrum(const Formula& f, const SearchConfig& cfg) {
  RankSpectrum out;
  if (cfg.universe_override) {
    for (const auto& s : *cfg.universe_override) out.bound = std::max(out.bound, s.rank());
  } else {
    out.bound = cfg.rank_bound;
  }
  out.candidates_examined = for_each_model(f, cfg, [&](const Assignment& m) { ++out.counts[dom_rank(m, f)]; });
  out.max_rank_hit_bound = !out.counts.empty() && out.counts.rbegin()->first >= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Bounded equisatisfiability.

struct EquisatOptions {
  /// Models of f that must extend to models of g.
  std::size_t transfer_samples = 4;
  std::uint64_t candidate_cap = 20'000'000;
  /// Rank bound for enumerating models of g in the restriction check;
  /// defaults to r.
  std::optional<std::size_t> restriction_rank;
};

struct EquisatVerdict {
  bool transfer_ok = true;
  bool restriction_ok = true;
  bool aborted = false;
  std::string failure;
  std::optional<Assignment> counterexample;
  std::size_t f_models_tried = 0;
  std::uint64_t g_candidates_examined = 0;

  bool passed() const { return transfer_ok && restriction_ok && !aborted; }
};

namespace detail {
inline void collect_subterm_values(const Assignment& m, const Term& t, std::vector<HfSet>& out) {
  for (const auto& a : t.args()) collect_subterm_values(m, a, out);
  try {
    out.push_back(eval_term(m, t));
  } catch (const EmptyIntersection&) {
  }
}

inline void collect_subterm_values(const Assignment& m, const Formula& f, std::vector<HfSet>& out) {
  for (const auto& t : f.terms()) collect_subterm_values(m, t, out);
  for (const auto& g : f.subs()) collect_subterm_values(m, g, out);
}
}  // namespace detail

/// Candidate values for auxiliary variables extending a model `m` of `f`:
/// the sets of rank <= r, the values of the subterms of f under m, their
/// pairwise differences, and singletons of all of these.
inline std::vector<HfSet> witness_universe(const Formula& f, const Assignment& m, std::size_t r) {
  std::vector<HfSet> base{HfSet{}};
  detail::collect_subterm_values(m, f, base);
  for (const auto& [name, v] : m) base.push_back(v);
  std::sort(base.begin(), base.end(), ack_less);
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<HfSet> derived = base;
  for (const auto& a : base)
    for (const auto& b : base) derived.push_back(set_diff(a, b));
  std::sort(derived.begin(), derived.end(), ack_less);
  derived.erase(std::unique(derived.begin(), derived.end()), derived.end());
  std::vector<HfSet> out = rank_universe(r);
  out.insert(out.end(), derived.begin(), derived.end());
  for (const auto& d : derived) out.push_back(HfSet::singleton(d));
  std::sort(out.begin(), out.end(), ack_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Checks within bounds that (1) models of f of rank <= r extend to models of
/// g of rank <= r + slack, and (2) every model of g of rank <= r restricts to
/// a model of f. A top-level disjunction in g is searched disjunct by
/// disjunct.
inline EquisatVerdict equisat_bounded(const Formula& f, const Formula& g, std::size_t r, std::size_t slack,
                                      const EquisatOptions& opt = {}) {
  EquisatVerdict v;
  const auto fvars = vars(f);
  std::vector<Formula> disjuncts;
  {
    std::vector<Formula> stack{g};
    while (!stack.empty()) {
      Formula h = stack.back();
      stack.pop_back();
      if (h.kind() == FormulaKind::Or) {
        stack.push_back(h.subs()[1]);
        stack.push_back(h.subs()[0]);
      } else {
        disjuncts.push_back(h);
      }
    }
  }

  // (1) bounded satisfiability transfers from f to g.
  SearchConfig fcfg;
  fcfg.rank_bound = r;
  fcfg.candidate_cap = opt.candidate_cap;
  std::vector<Assignment> fmodels;
  try {
    fmodels = enumerate_models(f, fcfg);
  } catch (const SearchAborted& e) {
    v.aborted = true;
    v.failure = std::string("enumerating models of f: ") + e.what();
    return v;
  }
  std::vector<Assignment> samples;
  if (!fmodels.empty()) {
    std::size_t n = std::min(opt.transfer_samples, fmodels.size());
    for (std::size_t i = 0; i < n; ++i) samples.push_back(fmodels[i * (fmodels.size() - 1) / std::max<std::size_t>(n - 1, 1)]);
  }
  for (const auto& m : samples) {
    ++v.f_models_tried;
    auto universe = witness_universe(f, m, r);
    std::erase_if(universe, [&](const HfSet& s) { return s.rank() > r + slack; });
    bool found = false, any_aborted = false;
    for (const auto& d : disjuncts) {
      SearchConfig gcfg;
      gcfg.universe_override = universe;
      gcfg.candidate_cap = opt.candidate_cap;
      gcfg.deterministic = false;
      for (const auto& name : fvars) gcfg.var_domains[name] = {m.at(name)};
      auto rep = solve_bounded(d, gcfg, fvars);
      if (rep.status == ModelReport::Status::Sat) {
        found = true;
        break;
      }
      any_aborted |= rep.status == ModelReport::Status::Aborted;
    }
    if (!found) {
      if (any_aborted) {
        v.aborted = true;
        v.failure = "search for an extension of a model of f was aborted";
      } else {
        v.transfer_ok = false;
        v.failure = "model of f has no bounded extension satisfying g";
      }
      v.counterexample = m;
      return v;
    }
  }

  // (2) models of g restrict to models of f: search each disjunct for a
  // model that falsifies f.
  SearchConfig rcfg;
  rcfg.rank_bound = opt.restriction_rank.value_or(r);
  rcfg.candidate_cap = opt.candidate_cap;
  rcfg.deterministic = false;
  const Formula not_f = Formula::negate(f);
  for (const auto& d : disjuncts) {
    auto rep = solve_bounded(Formula::conj(d, not_f), rcfg, fvars);
    v.g_candidates_examined += rep.candidates_examined;
    if (rep.status == ModelReport::Status::Aborted) {
      v.aborted = true;
      v.failure = "searching models of g: " + rep.abort_reason;
      return v;
    }
    if (rep.status == ModelReport::Status::Sat) {
      v.restriction_ok = false;
      v.failure = "model of g does not restrict to a model of f";
      v.counterexample = rep.model;
      return v;
    }
  }
  return v;
}

}  // namespace syllogist
