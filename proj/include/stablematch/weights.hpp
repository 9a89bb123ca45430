#pragma once

// Minimum-weight stable matchings: c(M) = c(Mmin) + sum of the weights of the
// rotations in M's ideal, minimized as a closure problem over H.

#include <string>
#include <string_view>
#include <vector>

#include "stablematch/closure.hpp"
#include "stablematch/instance.hpp"
#include "stablematch/poset.hpp"
#include "stablematch/rational.hpp"

namespace stablematch {

struct WeightFunction {
  std::vector<Rational> values;  // indexed by edge

  const Rational& operator[](EdgeIndex e) const { return values.at(e); }
};

/// c(e) = rank of e at its I-end + rank at its J-end.
inline WeightFunction egalitarian_weights(const PreferenceInstance& inst) {
  WeightFunction c;
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e)
    c.values.emplace_back(inst.rank(e, Side::I) + inst.rank(e, Side::J));
  return c;
}

inline Rational matching_cost(const Matching& m, const WeightFunction& c) {
  Rational total = 0;
  for (EdgeIndex e : m) total += c[e];
  return total;
}

/// Weight gained by eliminating r: sum of c(a_i) - c(e_i).
inline Rational rotation_weight(const Rotation& r, const WeightFunction& c) {
  Rational total = 0;
  for (EdgeIndex a : r.active) {
    if (a >= c.values.size()) throw_validation("weight missing for a rotation edge");
    total += c[a];
  }
  for (EdgeIndex e : r.matching) {
    if (e >= c.values.size()) throw_validation("weight missing for a rotation edge");
    total -= c[e];
  }
  return total;
}

struct WeightedMatching {
  Matching matching;
  Rational cost;
  Ideal ideal;
};

inline WeightedMatching min_weight_stable_matching(const PreferenceInstance& inst,
                                                   const RotationDigraph& g,
                                                   const WeightFunction& c) {
  if (c.values.size() != inst.num_edges()) throw_validation("weight function must cover every edge");
  ClosureInstance q;
  q.nodes = g.size();
  for (const auto& a : g.arcs()) q.arcs.emplace_back(a.from, a.to);
  for (const auto& r : g.rotations()) q.weights.push_back(rotation_weight(r, c));
  const auto closure = min_weight_closure(q);

  std::vector<std::uint32_t> members(closure.members.begin(), closure.members.end());
  WeightedMatching best;
  best.ideal = Ideal(std::move(members));
  best.matching = ideal_to_matching(g, best.ideal);
  best.cost = matching_cost(best.matching, c);
  if (best.cost != matching_cost(g.bottom(), c) + closure.weight)
    throw std::logic_error("matching cost differs from Mmin cost plus closure weight");
  return best;
}

inline WeightedMatching min_weight_stable_matching(const PreferenceInstance& inst,
                                                   const WeightFunction& c) {
  return min_weight_stable_matching(inst, build_digraph(inst), c);
}

struct ParsedWeights {
  WeightFunction weights;
  std::vector<std::string> warnings;
};

/// Parses lines `w <edge-id> <decimal>`; edges without a line default to 0
/// (reported in `warnings`).
inline ParsedWeights parse_weights(const PreferenceInstance& inst, std::string_view text) {
  ParsedWeights out;
  out.weights.values.assign(inst.num_edges(), Rational(0));
  std::vector<bool> given(inst.num_edges(), false);
  for (const auto& [lineno, tok] : detail::tokenize_lines(text)) {
    if (tok[0] != "w" || tok.size() != 3) throw_parse(lineno, "expected 'w <edge-id> <decimal>'");
    const auto e = inst.find_edge(tok[1]);
    if (!e) throw_parse(lineno, "unknown edge '" + tok[1] + "'");
    if (given[*e]) throw_parse(lineno, "duplicate weight for edge '" + tok[1] + "'");
    Rational value;
    if (!try_parse_decimal(tok[2], value)) throw_parse(lineno, "malformed decimal '" + tok[2] + "'");
    out.weights.values[*e] = value;
    given[*e] = true;
  }
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e)
    if (!given[e]) out.warnings.push_back("no weight for edge '" + inst.edge_id(e) + "', using 0");
  return out;
}

}  // namespace stablematch
