#pragma once

// Exhaustive reference implementations for small instances. Uses only the
// instance model and the blocking-edge definition, except oracle_precedes
// which reads rotation sets off pairs of matchings.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablematch/instance.hpp"
#include "stablematch/rational.hpp"
#include "stablematch/rotations.hpp"
#include "stablematch/stability.hpp"
#include "stablematch/weights.hpp"

namespace stablematch {

inline constexpr std::size_t kOracleEdgeLimit = 24;

inline void require_oracle_size(const PreferenceInstance& inst) {
  if (inst.num_edges() > kOracleEdgeLimit)
    throw_validation("oracle limited to " + std::to_string(kOracleEdgeLimit) + " edges, instance has " +
                     std::to_string(inst.num_edges()));
}

/// Calls visit(m) for every matching of the graph (stable or not).
template <class Visit>
void for_each_matching(const PreferenceInstance& inst, Visit&& visit) {
  const auto is = inst.vertices(Side::I);
  std::vector<bool> used(inst.num_vertices(), false);
  std::vector<EdgeIndex> chosen;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == is.size()) {
      visit(Matching(chosen));
      return;
    }
    self(self, k + 1);
    for (EdgeIndex e : inst.prefs(is[k])) {
      const auto w = inst.j_end(e);
      if (used[w]) continue;
      used[w] = true;
      chosen.push_back(e);
      self(self, k + 1);
      chosen.pop_back();
      used[w] = false;
    }
  };
  rec(rec, 0);
}

/// Every stable matching, sorted.
inline std::vector<Matching> all_stable_matchings(const PreferenceInstance& inst) {
  require_oracle_size(inst);
  std::vector<Matching> out;
  for_each_matching(inst, [&](const Matching& m) {
    if (is_stable(inst, m)) out.push_back(m);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum of c over all stable matchings; ties go to the smallest matching
/// in canonical order.
inline std::pair<Matching, Rational> oracle_min_weight(const PreferenceInstance& inst, const WeightFunction& c) {
  if (c.values.size() != inst.num_edges()) throw_validation("weight function must cover every edge");
  std::optional<std::pair<Matching, Rational>> best;
  for (const auto& m : all_stable_matchings(inst)) {
    Rational cost = matching_cost(m, c);
    if (!best || cost < best->second) best.emplace(m, std::move(cost));
  }
  return *best;
}

/// C strictly precedes D: every stable matching whose rotation set (from
/// Mmin) contains D also contains C.
inline bool oracle_precedes(const PreferenceInstance& inst, const Rotation& c, const Rotation& d) {
  require_oracle_size(inst);
  const auto all = rotation_set(inst);
  for (const auto* r : {&c, &d})
    if (!std::binary_search(all.begin(), all.end(), *r)) throw_validation("not a rotation of the instance");
  if (c == d) return false;
  const Matching bottom = deferred_acceptance(inst, Side::I);
  for (const auto& m : all_stable_matchings(inst)) {
    auto rs = rotations_between(inst, bottom, m);
    std::sort(rs.begin(), rs.end());
    const bool has_d = std::binary_search(rs.begin(), rs.end(), d);
    const bool has_c = std::binary_search(rs.begin(), rs.end(), c);
    if (has_d && !has_c) return false;
  }
  return true;
}

}  // namespace stablematch
