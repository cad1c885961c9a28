#pragma once

#include <json.hpp>

#include "ghcalc/derivative.hpp"
#include "ghcalc/interval.hpp"
#include "ghcalc/quotient.hpp"

namespace ghcalc {

inline nlohmann::json to_json(const Interval& a) {
  return {{"lo", a.lo()}, {"hi", a.hi()}};
}

inline nlohmann::json to_json(const LimitEstimate& e) {
  nlohmann::json j{{"exists", e.exists}, {"used", e.used}};
  if (e.exists) j["value"] = e.value;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

inline nlohmann::json to_json(const QuotientProfile& p, bool with_samples = true) {
  nlohmann::json branches = nlohmann::json::array();
  for (const auto& bq : p.branches) {
    nlohmann::json b{{"label", bq.label}, {"limit", to_json(bq.limit)}};
    if (with_samples) {
      nlohmann::json samples = nlohmann::json::array();
      for (const auto& s : bq.samples)
        samples.push_back({{"t", s.t}, {"value", s.value}, {"gamma", s.gamma}});
      b["samples"] = std::move(samples);
    }
    branches.push_back(std::move(b));
  }
  nlohmann::json j{{"endpoint", to_string(p.which)},
                   {"side", to_string(p.side)},
                   {"coord", p.coord},
                   {"base_value", p.base_value},
                   {"base_branch", p.base_branch},
                   {"branches", std::move(branches)},
                   {"cluster_set", p.cluster_set},
                   {"inconclusive", p.inconclusive}};
  if (p.min_limit) j["min_limit"] = *p.min_limit;
  if (p.max_limit) j["max_limit"] = *p.max_limit;
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

inline nlohmann::json to_json(const PairingReport& p) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& pl : p.pairs)
    pairs.push_back({{"lower", pl.lower_label},
                     {"upper", pl.upper_label},
                     {"min_limit", to_json(pl.min_limit)},
                     {"max_limit", to_json(pl.max_limit)}});
  nlohmann::json j{{"label_matched", p.label_matched},
                   {"pairs", std::move(pairs)},
                   {"complementary", p.complementary_pair.has_value()},
                   {"inconclusive", p.inconclusive}};
  if (p.complementary_pair)
    j["pair"] = {{"k_lo", p.complementary_pair->first}, {"k_hi", p.complementary_pair->second}};
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

inline nlohmann::json to_json(const DerivativeReport& r, bool with_samples = true) {
  nlohmann::json j{{"status", to_string(r.status)},
                   {"coord", r.coord},
                   {"point", r.point}};
  if (r.value) j["value"] = to_json(*r.value);
  if (r.case_tag) j["case"] = to_string(*r.case_tag);
  if (!r.reason.empty()) j["reason"] = r.reason;
  nlohmann::json one_sided;
  if (r.d_lower_right) one_sided["lower_right"] = *r.d_lower_right;
  if (r.d_upper_right) one_sided["upper_right"] = *r.d_upper_right;
  if (r.d_lower_left) one_sided["lower_left"] = *r.d_lower_left;
  if (r.d_upper_left) one_sided["upper_left"] = *r.d_upper_left;
  j["one_sided"] = std::move(one_sided);
  j["profiles"] = {{"lower_right", to_json(r.lower_right, with_samples)},
                   {"upper_right", to_json(r.upper_right, with_samples)},
                   {"lower_left", to_json(r.lower_left, with_samples)},
                   {"upper_left", to_json(r.upper_left, with_samples)}};
  j["pairing"] = {{"right", to_json(r.right_pairing)}, {"left", to_json(r.left_pairing)}};
  return j;
}

}  // namespace ghcalc
