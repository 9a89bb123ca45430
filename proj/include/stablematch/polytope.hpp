#pragma once

// Stable-matching polytope checks and generalized medians.
//
// The polytope is cut out by
//   x(e) >= 0            for every edge,
//   x(delta(v)) <= 1     for every vertex,
//   x(gamma(e)) >= 1     for every edge.
// On its points every support edge e = mw satisfies
//   x(delta(m)) = x(delta(w)) = x(gamma(e)) = 1.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stablematch/instance.hpp"
#include "stablematch/rational.hpp"
#include "stablematch/stability.hpp"

namespace stablematch {

template <class T>
struct BasicFractionalVector {
  std::vector<T> values;  // indexed by edge; absent edges are 0

  const T& operator[](EdgeIndex e) const { return values.at(e); }
};

using FractionalVector = BasicFractionalVector<Rational>;

/// Exact comparisons for Rational, absolute tolerance 1e-9 for floating point.
template <class T>
T default_tolerance() {
  if constexpr (std::is_floating_point_v<T>)
    return T(1e-9);
  else
    return T(0);
}

template <class T>
BasicFractionalVector<T> characteristic_vector(const PreferenceInstance& inst, const Matching& m) {
  BasicFractionalVector<T> x;
  x.values.assign(inst.num_edges(), T(0));
  for (EdgeIndex e : m) x.values.at(e) = T(1);
  return x;
}

/// sum_i weights[i] * chi(matchings[i]).
template <class T>
BasicFractionalVector<T> convex_combination(const PreferenceInstance& inst,
                                            std::span<const Matching> matchings,
                                            std::span<const T> weights) {
  if (matchings.size() != weights.size()) throw_validation("one coefficient per matching expected");
  BasicFractionalVector<T> x;
  x.values.assign(inst.num_edges(), T(0));
  for (std::size_t i = 0; i < matchings.size(); ++i)
    for (EdgeIndex e : matchings[i]) x.values.at(e) += weights[i];
  return x;
}

enum class InequalityKind { Nonnegative, Degree, Gamma };

inline const char* to_string(InequalityKind k) {
  switch (k) {
    case InequalityKind::Nonnegative: return "nonnegative";
    case InequalityKind::Degree: return "degree";
    case InequalityKind::Gamma: return "gamma";
  }
  return "?";
}

template <class T>
struct InequalityCheck {
  InequalityKind kind;
  std::uint32_t element;  // edge index (Nonnegative, Gamma) or vertex index (Degree)
  T lhs;
  T violation;  // amount by which the inequality fails, 0 if it holds
  bool holds;
};

template <class T>
struct MembershipReport {
  bool member = true;
  std::vector<InequalityCheck<T>> checks;

  std::vector<InequalityCheck<T>> violated() const {
    std::vector<InequalityCheck<T>> out;
    for (const auto& c : checks)
      if (!c.holds) out.push_back(c);
    return out;
  }

  T worst_violation(InequalityKind kind) const {
    T worst(0);
    for (const auto& c : checks)
      if (c.kind == kind && c.violation > worst) worst = c.violation;
    return worst;
  }

  bool family_holds(InequalityKind kind) const {
    return std::all_of(checks.begin(), checks.end(),
                       [&](const auto& c) { return c.kind != kind || c.holds; });
  }
};

namespace detail {

template <class T>
T sum_over(const BasicFractionalVector<T>& x, std::span<const EdgeIndex> edges) {
  T total(0);
  for (EdgeIndex e : edges) total += x[e];
  return total;
}

template <class T>
void require_full_vector(const PreferenceInstance& inst, const BasicFractionalVector<T>& x) {
  if (x.values.size() != inst.num_edges()) throw_validation("fractional vector must cover every edge");
}

}  // namespace detail

template <class T>
MembershipReport<T> check_polytope_membership(const PreferenceInstance& inst,
                                              const BasicFractionalVector<T>& x,
                                              T tolerance = default_tolerance<T>()) {
  detail::require_full_vector(inst, x);
  MembershipReport<T> report;
  auto record = [&](InequalityKind kind, std::uint32_t element, T lhs, T violation) {
    const bool holds = !(violation > tolerance);
    if (!(violation > T(0))) violation = T(0);
    report.member = report.member && holds;
    report.checks.push_back({kind, element, std::move(lhs), std::move(violation), holds});
  };
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) record(InequalityKind::Nonnegative, e, x[e], -x[e]);
  for (VertexIndex v = 0; v < inst.num_vertices(); ++v) {
    T lhs = detail::sum_over(x, inst.prefs(v));
    T violation = lhs - T(1);
    record(InequalityKind::Degree, v, std::move(lhs), std::move(violation));
  }
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    const auto gamma = gamma_set(inst, e);
    T lhs = detail::sum_over(x, std::span<const EdgeIndex>(gamma));
    T violation = T(1) - lhs;
    record(InequalityKind::Gamma, e, std::move(lhs), std::move(violation));
  }
  return report;
}

template <class T>
struct SupportCheck {
  EdgeIndex edge;
  T at_i;   // x(delta(m))
  T at_j;   // x(delta(w))
  T gamma;  // x(gamma(e))
  bool holds;
};

template <class T>
struct SupportReport {
  bool holds = true;
  std::vector<SupportCheck<T>> checks;  // one per support edge
};

/// For every e = mw with x(e) > 0, checks x(delta(m)) = x(delta(w)) =
/// x(gamma(e)) = 1. Meaningful for points of the polytope.
template <class T>
SupportReport<T> check_support_equalities(const PreferenceInstance& inst,
                                          const BasicFractionalVector<T>& x,
                                          T tolerance = default_tolerance<T>()) {
  detail::require_full_vector(inst, x);
  auto near_one = [&](const T& v) {
    T diff = v - T(1);
    if (diff < T(0)) diff = -diff;
    return !(diff > tolerance);
  };
  SupportReport<T> report;
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (!(x[e] > tolerance)) continue;
    const auto gamma = gamma_set(inst, e);
    SupportCheck<T> c{e, detail::sum_over(x, inst.prefs(inst.i_end(e))),
                      detail::sum_over(x, inst.prefs(inst.j_end(e))),
                      detail::sum_over(x, std::span<const EdgeIndex>(gamma)), false};
    c.holds = near_one(c.at_i) && near_one(c.at_j) && near_one(c.gamma);
    report.holds = report.holds && c.holds;
    report.checks.push_back(std::move(c));
  }
  return report;
}

/// For every covered vertex of `side`, the k-th (1-based) best of its edges
/// across the family, counted with repetition. A(k) for I, B(k) for J.
inline Matching median_selection(const PreferenceInstance& inst, std::span<const Matching> family,
                                 std::size_t k, Side side) {
  if (family.empty()) throw_validation("median needs at least one matching");
  if (k < 1 || k > family.size())
    throw_validation("k must lie in 1.." + std::to_string(family.size()));
  std::vector<std::vector<EdgeIndex>> mates;
  for (const auto& m : family) {
    require_stable(inst, m, "family member");
    mates.push_back(mate_edges(inst, m));
  }
  std::vector<EdgeIndex> chosen;
  for (VertexIndex v : inst.vertices(side)) {
    std::vector<EdgeIndex> list;
    for (const auto& mate : mates)
      if (mate[v] != kNone) list.push_back(mate[v]);
    if (list.empty()) continue;
    if (list.size() != family.size())
      throw_validation("family members cover different vertex sets");
    std::sort(list.begin(), list.end(),
              [&](EdgeIndex a, EdgeIndex b) { return inst.prefers(v, a, b); });
    chosen.push_back(list[k - 1]);
  }
  return Matching(std::move(chosen));
}

/// A(k): the k-th choice of every covered I-vertex. Always a stable matching,
/// and equal to B(l - k + 1) built from the J side.
inline Matching generalized_median(const PreferenceInstance& inst, std::span<const Matching> family,
                                   std::size_t k) {
  Matching a = median_selection(inst, family, k, Side::I);
  if (a != median_selection(inst, family, family.size() - k + 1, Side::J))
    throw std::logic_error("I-side and J-side median selections disagree");
  return a;
}

inline Matching median(const PreferenceInstance& inst, std::span<const Matching> family) {
  if (family.size() % 2 == 0) throw Error(ErrorKind::Infeasible, "median needs an odd number of matchings");
  return generalized_median(inst, family, (family.size() + 1) / 2);
}

/// Parses lines `x <edge-id> <decimal>`; absent edges are 0.
inline FractionalVector parse_fractional_vector(const PreferenceInstance& inst, std::string_view text) {
  FractionalVector x;
  x.values.assign(inst.num_edges(), Rational(0));
  std::vector<bool> given(inst.num_edges(), false);
  for (const auto& [lineno, tok] : detail::tokenize_lines(text)) {
    if (tok[0] != "x" || tok.size() != 3) throw_parse(lineno, "expected 'x <edge-id> <decimal>'");
    const auto e = inst.find_edge(tok[1]);
    if (!e) throw_parse(lineno, "unknown edge '" + tok[1] + "'");
    if (given[*e]) throw_parse(lineno, "duplicate value for edge '" + tok[1] + "'");
    if (!try_parse_decimal(tok[2], x.values[*e])) throw_parse(lineno, "malformed decimal '" + tok[2] + "'");
    given[*e] = true;
  }
  return x;
}

/// One matching per non-blank line, as space-separated edge ids.
inline std::vector<Matching> parse_matching_list(const PreferenceInstance& inst, std::string_view text) {
  std::vector<Matching> out;
  for (const auto& [lineno, tok] : detail::tokenize_lines(text)) {
    std::vector<EdgeIndex> edges;
    for (const auto& id : tok) {
      const auto e = inst.find_edge(id);
      if (!e) throw_parse(lineno, "unknown edge '" + id + "'");
      edges.push_back(*e);
    }
    Matching m(std::move(edges));
    try {
      validate_matching(inst, m);
    } catch (const Error& err) {
      throw_parse(lineno, err.what());
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace stablematch
