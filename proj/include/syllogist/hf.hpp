#pragma once

// Hereditarily finite sets in canonical form.
//
// An HfSet owns a sorted, duplicate-free sequence of members. The sort order
// is the order induced by the Ackermann encoding N(h) = sum of 2^N(h') over
// members h' of h, computed structurally: a < b iff the largest member of the
// symmetric difference of a and b belongs to b. Because the representation is
// canonical, structural equality coincides with set equality.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "syllogist/caps.hpp"
#include "syllogist/errors.hpp"

namespace syllogist {

using AckCode = boost::multiprecision::cpp_int;

class HfSet;
int ack_compare(const HfSet& a, const HfSet& b);

class HfSet {
 public:
  /// The empty set.
  HfSet() = default;

  /// Set of the given children; duplicates are removed and members sorted.
  static HfSet of(std::vector<HfSet> children) {
    std::sort(children.begin(), children.end(),
              [](const HfSet& a, const HfSet& b) { return ack_compare(a, b) < 0; });
    children.erase(std::unique(children.begin(), children.end()), children.end());
    return from_canonical(std::move(children));
  }

  /// Trusts the caller: `sorted` must already be strictly increasing.
  static HfSet from_canonical(std::vector<HfSet> sorted) {
    if (sorted.empty()) return {};
    auto node = std::make_shared<Node>();
    std::size_t h = 0x51ed270b27a3c9f1ULL ^ sorted.size();
    std::size_t rank = 0;
    for (const auto& e : sorted) {
      h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      rank = std::max(rank, e.rank() + 1);
    }
    node->hash = h;
    node->rank = rank;
    node->elems = std::move(sorted);
    return HfSet(std::move(node));
  }

  static HfSet singleton(const HfSet& x) { return from_canonical({x}); }

  std::span<const HfSet> elements() const {
    if (!node_) return {};
    return node_->elems;
  }
  std::size_t size() const { return node_ ? node_->elems.size() : 0; }
  bool empty() const { return !node_; }
  std::size_t rank() const { return node_ ? node_->rank : 0; }
  std::size_t hash() const { return node_ ? node_->hash : 0x2545f4914f6cdd1dULL; }

  bool contains(const HfSet& x) const {
    if (x.rank() >= rank()) return false;
    auto elems = elements();
    auto it = std::lower_bound(elems.begin(), elems.end(), x,
                               [](const HfSet& a, const HfSet& b) { return ack_compare(a, b) < 0; });
    return it != elems.end() && *it == x;
  }

  bool is_subset_of(const HfSet& other) const {
    if (size() > other.size() || rank() > other.rank()) return false;
    auto a = elements();
    auto b = other.elements();
    std::size_t j = 0;
    for (const auto& x : a) {
      while (true) {
        if (j == b.size()) return false;
        int c = ack_compare(b[j], x);
        if (c == 0) { ++j; break; }
        if (c > 0) return false;
        ++j;
      }
    }
    return true;
  }

  /// Canonical brace string, e.g. `{{},{{}}}`.
  std::string to_string() const {
    std::string out;
    append_to(out);
    return out;
  }

  friend bool operator==(const HfSet& a, const HfSet& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->hash != b.node_->hash || a.node_->elems.size() != b.node_->elems.size() ||
        a.node_->rank != b.node_->rank)
      return false;
    return std::equal(a.node_->elems.begin(), a.node_->elems.end(), b.node_->elems.begin());
  }

  /// The Ackermann order.
  friend bool operator<(const HfSet& a, const HfSet& b) { return ack_compare(a, b) < 0; }

 private:
  struct Node {
    std::vector<HfSet> elems;
    std::size_t hash = 0;
    std::size_t rank = 0;
  };
  explicit HfSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  void append_to(std::string& out) const {
    out.push_back('{');
    bool first = true;
    for (const auto& e : elements()) {
      if (!first) out.push_back(',');
      first = false;
      e.append_to(out);
    }
    out.push_back('}');
  }

  std::shared_ptr<const Node> node_;
};

/// Three-way comparison in the Ackermann order, without materializing codes.
inline int ack_compare(const HfSet& a, const HfSet& b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank() ? -1 : 1;
  auto ea = a.elements();
  auto eb = b.elements();
  if (ea.data() == eb.data()) return 0;
  std::size_t i = ea.size();
  std::size_t j = eb.size();
  while (i > 0 && j > 0) {
    if (int c = ack_compare(ea[i - 1], eb[j - 1]); c != 0) return c;
    --i;
    --j;
  }
  if (i > 0) return 1;
  if (j > 0) return -1;
  return 0;
}

inline bool ack_less(const HfSet& a, const HfSet& b) { return ack_compare(a, b) < 0; }

struct HfHash {
  std::size_t operator()(const HfSet& s) const { return s.hash(); }
};

/// Canonical set of the given children.
inline HfSet canonicalize(std::vector<HfSet> children) { return HfSet::of(std::move(children)); }

inline std::size_t rank(const HfSet& s) { return s.rank(); }

/// Exact Ackermann code. Codes grow doubly exponentially with the rank, so
/// the rank is capped.
inline AckCode ack_code(const HfSet& s) {
  if (s.rank() > current_caps().ack_rank)
    throw CapExceeded("ack_code: rank " + std::to_string(s.rank()) + " exceeds cap " +
                      std::to_string(current_caps().ack_rank));
  AckCode code = 0;
  for (const auto& e : s.elements()) {
    AckCode inner = ack_code(e);
    code += AckCode(1) << inner.convert_to<std::size_t>();
  }
  return code;
}

/// Inverse of the Ackermann encoding for codes that fit in 64 bits.
inline HfSet ack_decode(std::uint64_t code) {
  std::vector<HfSet> elems;
  for (unsigned bit = 0; bit < 64; ++bit)
    if (code & (std::uint64_t{1} << bit)) elems.push_back(ack_decode(bit));
  return HfSet::from_canonical(std::move(elems));
}

// ---------------------------------------------------------------------------
// Boolean operators (linear merges over the sorted members).

enum class BoolOp { Union, Inter, Diff };

inline HfSet boolean_op(BoolOp kind, const HfSet& a, const HfSet& b) {
  auto ea = a.elements();
  auto eb = b.elements();
  std::vector<HfSet> out;
  out.reserve(kind == BoolOp::Union ? ea.size() + eb.size() : ea.size());
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    int c = ack_compare(ea[i], eb[j]);
    if (c < 0) {
      if (kind != BoolOp::Inter) out.push_back(ea[i]);
      ++i;
    } else if (c > 0) {
      if (kind == BoolOp::Union) out.push_back(eb[j]);
      ++j;
    } else {
      if (kind != BoolOp::Diff) out.push_back(ea[i]);
      ++i;
      ++j;
    }
  }
  if (kind != BoolOp::Inter)
    for (; i < ea.size(); ++i) out.push_back(ea[i]);
  if (kind == BoolOp::Union)
    for (; j < eb.size(); ++j) out.push_back(eb[j]);
  return HfSet::from_canonical(std::move(out));
}

inline HfSet set_union(const HfSet& a, const HfSet& b) { return boolean_op(BoolOp::Union, a, b); }
inline HfSet set_inter(const HfSet& a, const HfSet& b) { return boolean_op(BoolOp::Inter, a, b); }
inline HfSet set_diff(const HfSet& a, const HfSet& b) { return boolean_op(BoolOp::Diff, a, b); }

// ---------------------------------------------------------------------------
// Powerset-like operators.

namespace detail {
inline void check_powerset_card(std::size_t n, const char* what) {
  if (n > current_caps().powerset_card || n >= 63)
    throw CapExceeded(std::string(what) + ": base of size " + std::to_string(n) +
                      " exceeds cap " + std::to_string(current_caps().powerset_card));
}

// Subsets of a sorted base selected by `mask`. Masks compare like the
// Ackermann codes of the subsets they select, so increasing masks give
// increasing sets.
inline HfSet subset_by_mask(std::span<const HfSet> base, std::uint64_t mask) {
  std::vector<HfSet> elems;
  elems.reserve(std::popcount(mask));
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) elems.push_back(base[i]);
  return HfSet::from_canonical(std::move(elems));
}
}  // namespace detail

inline HfSet powerset(const HfSet& s) {
  detail::check_powerset_card(s.size(), "powerset");
  const std::uint64_t count = std::uint64_t{1} << s.size();
  std::vector<HfSet> subsets;
  subsets.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask)
    subsets.push_back(detail::subset_by_mask(s.elements(), mask));
  return HfSet::from_canonical(std::move(subsets));
}

/// Subsets of the union of `args` that meet every argument.
inline HfSet powast(std::span<const HfSet> args) {
  HfSet base;
  for (const auto& a : args) base = set_union(base, a);
  detail::check_powerset_card(base.size(), "powast");
  auto elems = base.elements();
  std::vector<std::uint64_t> arg_masks;
  for (const auto& a : args) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (a.contains(elems[i])) m |= std::uint64_t{1} << i;
    arg_masks.push_back(m);
  }
  const std::uint64_t count = std::uint64_t{1} << elems.size();
  std::vector<HfSet> out;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    bool meets_all = std::all_of(arg_masks.begin(), arg_masks.end(),
                                 [mask](std::uint64_t m) { return (mask & m) != 0; });
    if (meets_all) out.push_back(detail::subset_by_mask(elems, mask));
  }
  return HfSet::from_canonical(std::move(out));
}

// ---------------------------------------------------------------------------
// Unary unions and intersection.

inline HfSet big_union(const HfSet& s) {
  std::vector<HfSet> all;
  for (const auto& m : s.elements()) all.insert(all.end(), m.elements().begin(), m.elements().end());
  return HfSet::of(std::move(all));
}

inline HfSet big_inter(const HfSet& s) {
  if (s.empty()) throw EmptyIntersection();
  auto elems = s.elements();
  HfSet acc = elems[0];
  for (std::size_t i = 1; i < elems.size() && !acc.empty(); ++i) acc = set_inter(acc, elems[i]);
  return acc;
}

/// Members belonging to exactly one member of `s`.
inline HfSet disj_union(const HfSet& s) {
  std::vector<HfSet> all;
  for (const auto& m : s.elements()) all.insert(all.end(), m.elements().begin(), m.elements().end());
  std::sort(all.begin(), all.end(), ack_less);
  std::vector<HfSet> out;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i + 1;
    while (j < all.size() && all[j] == all[i]) ++j;
    if (j - i == 1) out.push_back(all[i]);
    i = j;
  }
  return HfSet::from_canonical(std::move(out));
}

// ---------------------------------------------------------------------------
// Pairs and products.

/// Unordered pair {a, b}; collapses to {a} when a = b.
inline HfSet upair(const HfSet& a, const HfSet& b) { return HfSet::of({a, b}); }

/// Kuratowski pair {{a}, {a, b}}.
inline HfSet kpair(const HfSet& a, const HfSet& b) {
  return upair(HfSet::singleton(a), upair(a, b));
}

namespace detail {
inline void check_product(const HfSet& a, const HfSet& b, const char* what) {
  if (a.size() * b.size() > current_caps().product_size)
    throw CapExceeded(std::string(what) + ": product of sizes " + std::to_string(a.size()) + "x" +
                      std::to_string(b.size()) + " exceeds cap");
}
}  // namespace detail

inline HfSet cart_prod(const HfSet& a, const HfSet& b) {
  detail::check_product(a, b, "cross");
  std::vector<HfSet> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a.elements())
    for (const auto& v : b.elements()) out.push_back(kpair(u, v));
  return HfSet::of(std::move(out));
}

inline HfSet unord_prod(const HfSet& a, const HfSet& b) {
  detail::check_product(a, b, "ucross");
  std::vector<HfSet> out;
  out.reserve(a.size() * b.size());
  for (const auto& u : a.elements())
    for (const auto& v : b.elements()) out.push_back(upair(u, v));
  return HfSet::of(std::move(out));
}

// ---------------------------------------------------------------------------
// Enumerations.

/// Members of V_n (the sets of rank < n) in increasing order.
inline const std::vector<HfSet>& level(std::size_t n) {
  if (n > current_caps().level || n > 5)
    throw CapExceeded("level(" + std::to_string(n) + ") exceeds cap " +
                      std::to_string(current_caps().level));
  static std::array<std::vector<HfSet>, 6> levels;
  static std::array<std::once_flag, 6> flags;
  std::call_once(flags[n], [n] {
    if (n == 0) return;
    const auto& prev = level(n - 1);
    const std::uint64_t count = std::uint64_t{1} << prev.size();
    levels[n].reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask)
      levels[n].push_back(detail::subset_by_mask(prev, mask));
  });
  return levels[n];
}

/// a_0 = {0}, a_{n+1} = {0, a_n}; returns a_0 .. a_k.
inline std::vector<HfSet> chain(std::size_t k) {
  std::vector<HfSet> out;
  out.reserve(k + 1);
  out.push_back(HfSet::singleton(HfSet{}));
  for (std::size_t i = 1; i <= k; ++i) out.push_back(upair(HfSet{}, out.back()));
  return out;
}

/// All sets reachable from `s` through membership (s itself excluded).
inline std::vector<HfSet> transitive_closure(const HfSet& s) {
  std::unordered_set<HfSet, HfHash> seen;
  std::vector<HfSet> stack(s.elements().begin(), s.elements().end());
  while (!stack.empty()) {
    HfSet x = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (const auto& e : x.elements()) stack.push_back(e);
  }
  std::vector<HfSet> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), ack_less);
  return out;
}

namespace detail {
inline double count_small_subsets(std::size_t n, std::size_t max_card) {
  double total = 0, term = 1;
  for (std::size_t k = 0; k <= std::min(n, max_card); ++k) {
    total += term;
    term = term * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return total;
}

inline void collect_small_subsets(std::span<const HfSet> pool, std::size_t max_card, std::size_t start,
                                  std::vector<HfSet>& cur, std::vector<HfSet>& out) {
  out.push_back(HfSet::from_canonical(cur));
  if (cur.size() == max_card) return;
  for (std::size_t i = start; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    collect_small_subsets(pool, max_card, i + 1, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// Subsets of the sorted `pool` with at most `max_card` members, sorted.
inline std::vector<HfSet> small_subsets(std::span<const HfSet> pool, std::size_t max_card) {
  double n = detail::count_small_subsets(pool.size(), max_card);
  if (n > static_cast<double>(current_caps().universe_size))
    throw CapExceeded("universe of " + std::to_string(static_cast<long double>(n)) +
                      " sets exceeds cap " + std::to_string(current_caps().universe_size));
  std::vector<HfSet> out;
  out.reserve(static_cast<std::size_t>(n));
  if (pool.size() <= 24) {
    const std::uint64_t count = std::uint64_t{1} << pool.size();
    for (std::uint64_t mask = 0; mask < count; ++mask)
      if (static_cast<std::size_t>(std::popcount(mask)) <= max_card)
        out.push_back(detail::subset_by_mask(pool, mask));
    return out;
  }
  std::vector<HfSet> cur;
  detail::collect_small_subsets(pool, max_card, 0, cur, out);
  std::sort(out.begin(), out.end(), ack_less);
  return out;
}

/// Sets of rank <= r (members drawn from level(r)) with at most `max_card`
/// members, in increasing order.
inline std::vector<HfSet> rank_universe(std::size_t r, std::size_t max_card = SIZE_MAX) {
  return small_subsets(level(r), max_card);
}

/// Sets of rank <= r all of whose hereditary members have at most `max_card`
/// members.
inline std::vector<HfSet> hereditary_universe(std::size_t r, std::size_t max_card) {
  std::vector<HfSet> cur{HfSet{}};
  for (std::size_t i = 0; i < r; ++i) cur = small_subsets(cur, max_card);
  return cur;
}

// ---------------------------------------------------------------------------
// Text form.

/// Parses a brace string such as `{ {}, {{}} }`; members may appear in any
/// order and repeat.
inline HfSet parse_hf(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                 text[pos] == '\r'))
      ++pos;
  };
  auto fail = [&](const std::string& msg) -> SyntaxError { return SyntaxError(msg, 1, pos + 1); };
  std::function<HfSet(std::size_t)> parse_set = [&](std::size_t depth) -> HfSet {
    if (depth > 4096) throw fail("set nesting too deep");
    skip_ws();
    if (pos >= text.size() || text[pos] != '{') throw fail("expected '{'");
    ++pos;
    std::vector<HfSet> elems;
    skip_ws();
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return {};
    }
    while (true) {
      elems.push_back(parse_set(depth + 1));
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        break;
      }
      throw fail("expected ',' or '}'");
    }
    return HfSet::of(std::move(elems));
  };
  HfSet out = parse_set(0);
  skip_ws();
  if (pos != text.size()) throw fail("trailing characters after set");
  return out;
}

}  // namespace syllogist

template <>
struct std::hash<syllogist::HfSet> {
  std::size_t operator()(const syllogist::HfSet& s) const { return s.hash(); }
};
