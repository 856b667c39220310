#pragma once

#include <json.hpp>

#include "tvg/enumerate.hpp"

// JSON shapes for reports. Multi-record outputs are JSON Lines (one object
// per line); single reports are one object. Key order is fixed so output is
// byte-stable across runs and worker counts.

namespace tvg {

using json = nlohmann::ordered_json;

inline json axiom_report_json(const AxiomReport& r) {
  json j;
  j["associative"] = r.associative.ok;
  if (!r.associative.ok) {
    const auto& w = *r.associative.witness;
    j["associativity_witness"] = {{"x", w.x},       {"y", w.y},           {"z", w.z},
                                  {"lhs", w.lhs.expanded()}, {"rhs", w.rhs.expanded()}};
  }
  j["strong_identity"] = r.strong_identity.ok;
  if (!r.strong_identity.ok) j["strong_identity_witness"] = *r.strong_identity.witness;
  j["involutive"] = r.involutive.ok;
  if (!r.involutive.ok)
    j["involutivity_witness"] = {{"x", r.involutive.witness->x}, {"y", r.involutive.witness->y}};
  j["commutative"] = r.commutative.ok;
  if (!r.commutative.ok)
    j["commutativity_witness"] = {{"x", r.commutative.witness->x}, {"y", r.commutative.witness->y}};
  j["is_involutive_2vg"] = r.is_involutive_2vg;
  return j;
}

inline json census_json(const CommutationCensus& c) {
  return json{{"equal", c.equal},
              {"triple_overlap", c.triple_overlap},
              {"shared_involution", c.shared_involution},
              {"other", c.other}};
}

inline json spectrum_json(const std::vector<std::optional<int>>& spectrum) {
  json a = json::array();
  for (const auto& v : spectrum) {
    if (v)
      a.push_back(*v);
    else
      a.push_back(nullptr);
  }
  return a;
}

inline json census_entry_json(const CensusEntry& e) {
  json j;
  j["order"] = e.table.order();
  j["file"] = table_filename(e.table);
  j["associative"] = e.axioms.associative.ok;
  j["strong_identity"] = e.axioms.strong_identity.ok;
  j["involutive"] = e.axioms.involutive.ok;
  j["is_involutive_2vg"] = e.axioms.is_involutive_2vg;
  j["commutative"] = e.commutative;
  j["membership_transfer"] = e.membership_transfer.ok;
  j["order2_doubling"] = e.order2_doubling.ok;
  j["sandwich_identity"] = e.sandwich_identity.ok;
  j["pair_census"] = census_json(e.pair_census);
  j["order_spectrum"] = spectrum_json(e.order_spectrum);
  return j;
}

inline std::string census_jsonl(const std::vector<CensusEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += census_entry_json(e).dump();
    out += '\n';
  }
  return out;
}

}  // namespace tvg
