#pragma once

// JSON forms of assignments, universes and reports.
//
//   assignment   {"x": "{{}}", "y": "{}"}
//   universe     ["{}", "{{}}"]
//   model report {"status": "sat", "model": {...}, "candidates_examined": N, "elapsed_ms": T}
//   spectrum     {"ranks": {"2": 1}, "all_models_finite": true, "max_rank_hit_bound": true, ...}
//   verdict      {"claim": ..., "universe": ..., "cases_checked": N, "status": "PASS",
//                 "failures": [{"reason": ..., "assignment": {...}}], "details": {...}}
//
// elapsed_ms is left out when output must be reproducible.

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "syllogist/gadgets.hpp"
#include "syllogist/hf.hpp"
#include "syllogist/semantics.hpp"
#include "syllogist/solver.hpp"
#include "syllogist/verify.hpp"

namespace syllogist {

using Json = nlohmann::ordered_json;

inline Json to_json(const Assignment& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v.to_string();
  return j;
}

inline Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) throw Error("assignment must be a JSON object");
  Assignment m;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error("value of '" + k + "' must be a brace string");
    if (!is_valid_var_name(k)) throw Error("invalid variable name '" + k + "'");
    m[k] = parse_hf(v.get<std::string>());
  }
  return m;
}

inline std::vector<HfSet> universe_from_json(const Json& j) {
  if (!j.is_array()) throw Error("universe must be a JSON array of brace strings");
  std::vector<HfSet> u;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error("universe entries must be brace strings");
    u.push_back(parse_hf(v.get<std::string>()));
  }
  return u;
}

inline Json to_json(const std::vector<HfSet>& u) {
  Json j = Json::array();
  for (const auto& s : u) j.push_back(s.to_string());
  return j;
}

inline double millis(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

inline Json to_json(const ModelReport& r, bool deterministic) {
  Json j;
  j["status"] = to_string(r.status);
  if (r.model) j["model"] = to_json(*r.model);
  if (r.status == ModelReport::Status::Aborted) j["reason"] = r.abort_reason;
  j["candidates_examined"] = r.candidates_examined;
  if (!deterministic) j["elapsed_ms"] = millis(r.elapsed);
  return j;
}

inline Json to_json(const RankSpectrum& s) {
  Json ranks = Json::object();
  for (const auto& [rank, n] : s.counts) ranks[std::to_string(rank)] = n;
  Json j;
  j["ranks"] = ranks;
  j["all_models_finite"] = s.all_models_finite;
  j["max_rank_hit_bound"] = s.max_rank_hit_bound;
  j["rank_bound"] = s.bound;
  j["candidates_examined"] = s.candidates_examined;
  return j;
}

inline Json to_json(const VerdictReport& r, bool deterministic) {
  Json j;
  j["claim"] = r.claim;
  j["universe"] = r.universe;
  j["cases_checked"] = r.cases_checked;
  j["status"] = to_string(r.status);
  if (r.status == VerdictReport::Status::Aborted) j["reason"] = r.abort_reason;
  Json fs = Json::array();
  for (const auto& f : r.failures) fs.push_back(Json{{"reason", f.reason}, {"assignment", to_json(f.assignment)}});
  j["failures"] = fs;
  j["details"] = r.details;
  if (!deterministic) j["elapsed_ms"] = millis(r.elapsed);
  return j;
}

/// Sidecar describing a gadget.
inline Json gadget_json(const GadgetSpec& g) {
  Json j;
  j["name"] = g.name;
  j["interface_vars"] = g.interface_vars;
  j["unconstrained_vars"] = g.unconstrained_vars;
  j["property"] = g.property_name;
  j["fragment"] = to_string(classify_fragment(g.formula));
  j["note"] = g.note;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace syllogist
