#pragma once

// Lattice structure of stable matchings: the alternating cycles of M xor L,
// their raising/lowering classification, meet, join, and the order relation.

#include <stdexcept>
#include <vector>

#include "stablematch/instance.hpp"
#include "stablematch/stability.hpp"

namespace stablematch {

/// An alternating cycle of M xor L. Edges are listed in cyclic order with the
/// L-edges traversed from their I-end to their J-end, starting at the edge of
/// smallest index. The cycle is raising (w.r.t. M) when every vertex of I on
/// it prefers its M-edge; then every edge is preferred to its successor at
/// their shared vertex.
struct AlternatingCycle {
  std::vector<EdgeIndex> edges;
  bool raising = false;

  friend bool operator==(const AlternatingCycle&, const AlternatingCycle&) = default;
};

inline std::vector<AlternatingCycle> diff_cycles(const PreferenceInstance& inst, const Matching& m,
                                                 const Matching& l) {
  require_stable(inst, m, "first matching");
  require_stable(inst, l, "second matching");
  const auto mate_m = mate_edges(inst, m);
  const auto mate_l = mate_edges(inst, l);

  std::vector<bool> seen(inst.num_edges(), false);
  std::vector<AlternatingCycle> cycles;
  auto in_diff = [&](EdgeIndex e) { return m.contains(e) != l.contains(e); };

  for (EdgeIndex start = 0; start < inst.num_edges(); ++start) {
    if (seen[start] || !in_diff(start)) continue;
    AlternatingCycle cycle;
    EdgeIndex e = start;
    do {
      seen[e] = true;
      cycle.edges.push_back(e);
      // After an L-edge move to the M-edge at its J-end, after an M-edge to
      // the L-edge at its I-end.
      const bool in_l = l.contains(e);
      const VertexIndex pivot = in_l ? inst.j_end(e) : inst.i_end(e);
      const EdgeIndex next = in_l ? mate_m[pivot] : mate_l[pivot];
      if (next == kNone || next == e)
        throw_validation("symmetric difference contains a path; inputs are not stable");
      e = next;
    } while (e != start);

    const EdgeIndex first_m = m.contains(cycle.edges[0]) ? cycle.edges[0] : cycle.edges[1];
    const VertexIndex probe = inst.i_end(first_m);
    cycle.raising = inst.prefers(probe, first_m, mate_l[probe]);
    const std::size_t k = cycle.edges.size();
    for (std::size_t i = 0; i < k; ++i) {
      const EdgeIndex x = cycle.edges[i];
      const EdgeIndex y = cycle.edges[(i + 1) % k];
      const VertexIndex shared =
          (inst.i_end(x) == inst.i_end(y)) ? inst.i_end(x) : inst.j_end(x);
      if (inst.prefers(shared, x, y) != cycle.raising)
        throw std::logic_error("alternating cycle is not uniformly directed");
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

/// Swaps M-edges for the other edges along each cycle. The result is a
/// matching but need not be stable.
inline Matching replace_along(const PreferenceInstance& inst, const Matching& m,
                              std::span<const AlternatingCycle> cycles) {
  std::vector<bool> used(inst.num_vertices(), false);
  std::vector<bool> drop(inst.num_edges(), false);
  std::vector<EdgeIndex> add;
  for (const auto& cycle : cycles) {
    std::vector<VertexIndex> verts;
    for (EdgeIndex e : cycle.edges) {
      if (e >= inst.num_edges()) throw_validation("cycle edge out of range");
      verts.push_back(inst.i_end(e));
      verts.push_back(inst.j_end(e));
      if (m.contains(e))
        drop[e] = true;
      else
        add.push_back(e);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (VertexIndex v : verts) {
      if (used[v]) throw_validation("cycles overlap at vertex '" + inst.vertex_id(v) + "'");
      used[v] = true;
    }
  }
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e : m)
    if (!drop[e]) edges.push_back(e);
  edges.insert(edges.end(), add.begin(), add.end());
  Matching out(std::move(edges));
  validate_matching(inst, out);
  return out;
}

namespace detail {

inline Matching replace_along_kind(const PreferenceInstance& inst, const Matching& m,
                                   const Matching& l, bool raising) {
  std::vector<AlternatingCycle> chosen;
  for (auto& c : diff_cycles(inst, m, l))
    if (c.raising == raising) chosen.push_back(std::move(c));
  return replace_along(inst, m, chosen);
}

}  // namespace detail

/// Greatest lower bound: exchange along every lowering cycle.
inline Matching meet(const PreferenceInstance& inst, const Matching& m, const Matching& l) {
  return detail::replace_along_kind(inst, m, l, false);
}

/// Least upper bound: exchange along every raising cycle.
inline Matching join(const PreferenceInstance& inst, const Matching& m, const Matching& l) {
  return detail::replace_along_kind(inst, m, l, true);
}

enum class Relation { Equal, Less, Greater, Incomparable };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "equal";
    case Relation::Less: return "less";
    case Relation::Greater: return "greater";
    case Relation::Incomparable: return "incomparable";
  }
  return "?";
}

/// M < L when every covered I-vertex weakly prefers its M-edge.
inline Relation compare(const PreferenceInstance& inst, const Matching& m, const Matching& l) {
  require_stable(inst, m, "first matching");
  require_stable(inst, l, "second matching");
  const auto mate_m = mate_edges(inst, m);
  const auto mate_l = mate_edges(inst, l);
  bool m_better = false;
  bool l_better = false;
  for (VertexIndex v = 0; v < inst.num_i(); ++v) {
    if (mate_m[v] == kNone || mate_l[v] == kNone || mate_m[v] == mate_l[v]) continue;
    (inst.prefers(v, mate_m[v], mate_l[v]) ? m_better : l_better) = true;
  }
  if (m_better && l_better) return Relation::Incomparable;
  if (m_better) return Relation::Less;
  if (l_better) return Relation::Greater;
  return Relation::Equal;
}

inline bool precedes_or_equal(const PreferenceInstance& inst, const Matching& m, const Matching& l) {
  const Relation r = compare(inst, m, l);
  return r == Relation::Less || r == Relation::Equal;
}

}  // namespace stablematch
