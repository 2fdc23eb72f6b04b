#pragma once

#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>

#include "syllogist/errors.hpp"

namespace syllogist {

/// Resource limits shared by every module. Enumerations fail fast with
/// CapExceeded instead of exhausting memory.
struct Caps {
  std::size_t powerset_card = 16;       // |s| for powerset / powast
  std::size_t product_size = 1u << 16;  // |a|*|b| for cross / ucross
  std::size_t level = 5;                // largest n accepted by level(n)
  std::size_t ack_rank = 5;             // largest rank accepted by ack_code
  std::size_t dnf_disjuncts = 4096;
  std::size_t universe_size = 5'000'000;
  std::size_t repr_closure = 64;  // index set of representing formulas

  /// Parses `key=value` pairs separated by commas, e.g.
  /// `powerset=12,product=1024`. Unknown keys are rejected.
  static Caps parse(std::string_view text);
  static Caps parse(std::string_view text, Caps base) {
    while (!text.empty()) {
      auto comma = text.find(',');
      auto item = text.substr(0, comma);
      text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error("malformed cap '" + std::string(item) + "'");
      auto key = item.substr(0, eq);
      auto val = item.substr(eq + 1);
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), n);
      if (ec != std::errc{} || ptr != val.data() + val.size())
        throw Error("malformed cap value '" + std::string(item) + "'");
      if (key == "powerset") base.powerset_card = n;
      else if (key == "product") base.product_size = n;
      else if (key == "level") base.level = n;
      else if (key == "ack_rank") base.ack_rank = n;
      else if (key == "dnf") base.dnf_disjuncts = n;
      else if (key == "universe") base.universe_size = n;
      else if (key == "repr_closure") base.repr_closure = n;
      else throw Error("unknown cap '" + std::string(key) + "'");
    }
    // level(6) and ack codes of rank-6 sets are not representable at all.
    if (base.level > 5) base.level = 5;
    if (base.ack_rank > 5) base.ack_rank = 5;
    return base;
  }

  /// Defaults overridden by the SYLLOGIST_CAPS environment variable.
  static Caps from_env() {
    const char* env = std::getenv("SYLLOGIST_CAPS");
    return env ? parse(env) : Caps{};
  }
};

inline Caps Caps::parse(std::string_view text) { return parse(text, Caps{}); }

namespace detail {
inline Caps& caps_storage() {
  static Caps caps;
  return caps;
}
}  // namespace detail

// Caps are process-wide; set them before starting parallel work.
inline const Caps& current_caps() { return detail::caps_storage(); }
inline void set_caps(const Caps& caps) { detail::caps_storage() = caps; }

/// Restores the previous caps on scope exit.
class ScopedCaps {
 public:
  explicit ScopedCaps(const Caps& caps) : saved_(current_caps()) { set_caps(caps); }
  ~ScopedCaps() { set_caps(saved_); }
  ScopedCaps(const ScopedCaps&) = delete;
  ScopedCaps& operator=(const ScopedCaps&) = delete;

 private:
  Caps saved_;
};

}  // namespace syllogist
