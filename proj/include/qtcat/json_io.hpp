#pragma once

#include <string>

#include "json.hpp"
#include "qtcat/generators.hpp"
#include "qtcat/lemma_engine.hpp"
#include "qtcat/poly_expand.hpp"

namespace qtcat {

using nlohmann::json;

inline json to_json(const Diagram& d) {
  json arr = json::array();
  for (const Point& p : d.points()) arr.push_back({p.x, p.y});
  return arr;
}

inline json to_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (const Point& p : pts) arr.push_back({p.x, p.y});
  return arr;
}

inline json to_json(const AltVector& v) {
  json arr = json::array();
  for (const auto& [d, c] : v.terms()) {
    arr.push_back({{"diagram", to_json(d)}, {"coefficient", c.to_string()}});
  }
  return arr;
}

inline json to_json(const QtPolynomial& p, int n) {
  json coeffs = json::array();
  for (const auto& [key, c] : p.coeffs())
    coeffs.push_back({key.first, key.second, c});
  return json{{"n", n}, {"coeffs", coeffs}};
}

inline json to_json(const ModuleSlice& s) {
  return json{{"n", s.n},
              {"d1", s.d1},
              {"d2", s.d2},
              {"dim_A", s.dim_a},
              {"rank_R", s.rank_r},
              {"dim_M", s.dim_m},
              {"primes", {s.prime_a, s.prime_b}},
              {"exact_checked", s.exact_checked}};
}

inline json to_json(const MoveOutcome& m) {
  json produced = json::array();
  for (const auto& pts : m.produced) produced.push_back(to_json(pts));
  json out{{"move", m.move},
           {"input", to_json(m.input_points)},
           {"params", m.params},
           {"produced", produced},
           {"relation", to_json(m.relation)},
           {"verdict", m.verdict},
           {"modulus", m.modulus}};
  if (m.strengthened) out["strengthened_verdict"] = *m.strengthened;
  return out;
}

inline json to_json(const RelationScanReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back(to_json(f));
  return json{{"relation", r.relation}, {"n", r.n},
              {"exhaustive", r.exhaustive}, {"seed", r.seed},
              {"instances", r.instances},  {"verified", r.verified},
              {"pass", r.pass()},          {"failures", failures}};
}

inline json to_json(const Conjecture41Report& r) {
  json slices = json::array();
  for (const auto& s : r.slices)
    slices.push_back({{"d1", s.d1},
                      {"d2", s.d2},
                      {"count", s.count},
                      {"dim_M", s.dim_m},
                      {"rank", s.rank}});
  return json{{"n", r.n},
              {"verdict", r.pass ? "PASS" : "FAIL"},
              {"counts_match", r.counts_match},
              {"injective", r.injective},
              {"slices", slices}};
}

inline json to_json(const PdkReport& r) {
  json mismatches = json::array();
  for (const auto& e : r.mismatches)
    mismatches.push_back({{"d1", e.d1},
                          {"d2", e.d2},
                          {"k", e.k},
                          {"dim_M", e.dim_m},
                          {"expected", e.expected}});
  return json{{"n", r.n},
              {"verdict", r.pass ? "PASS" : "FAIL"},
              {"bidegrees_checked", r.entries.size()},
              {"mismatches", mismatches}};
}

}  // namespace qtcat
