#pragma once

// Active graphs, rotations, and traces from Mmin to Mmax.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "stablematch/instance.hpp"
#include "stablematch/lattice.hpp"
#include "stablematch/stability.hpp"

namespace stablematch {

/// A rotation e_1 a_1 e_2 a_2 ... e_k a_k: e_i are edges of the current
/// matching, a_i the active edges. e_i and a_i share an I-vertex, a_i and
/// e_{i+1} share a J-vertex. Stored in canonical form (e_1 has the smallest
/// index among the matching edges).
struct Rotation {
  std::vector<EdgeIndex> matching;
  std::vector<EdgeIndex> active;

  std::size_t size() const { return matching.size(); }

  /// Interleaved cyclic sequence e_1 a_1 ... e_k a_k.
  std::vector<EdgeIndex> cycle() const {
    std::vector<EdgeIndex> out;
    out.reserve(2 * matching.size());
    for (std::size_t i = 0; i < matching.size(); ++i) {
      out.push_back(matching[i]);
      out.push_back(active[i]);
    }
    return out;
  }

  friend auto operator<=>(const Rotation&, const Rotation&) = default;
};

struct ActiveGraph {
  struct Component {
    std::vector<VertexIndex> vertices;
    std::vector<EdgeIndex> edges;
    bool has_cycle = false;
    std::vector<EdgeIndex> cycle;  // interleaved rotation sequence when has_cycle
  };

  Matching base;
  std::vector<EdgeIndex> admissible;  // sorted
  std::vector<EdgeIndex> active;      // sorted, at most one per I-vertex
  std::vector<EdgeIndex> active_at;   // indexed by I-vertex, kNone if none
  std::vector<Component> components;  // ordered by smallest edge
  std::vector<Rotation> rotations;    // one per cycle-containing component, canonical order

  bool is_forest() const { return rotations.empty(); }
};

namespace detail {

inline Rotation canonical_rotation(std::vector<EdgeIndex> matching, std::vector<EdgeIndex> active) {
  const auto k = matching.size();
  const auto shift = static_cast<std::size_t>(
      std::min_element(matching.begin(), matching.end()) - matching.begin());
  Rotation r;
  for (std::size_t i = 0; i < k; ++i) {
    r.matching.push_back(matching[(i + shift) % k]);
    r.active.push_back(active[(i + shift) % k]);
  }
  return r;
}

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

/// Builds the active graph of a stable matching. An edge a = mw outside M is
/// admissible when m holds an M-edge it prefers to a and w is uncovered or
/// holds an M-edge worse than a; the first admissible edge at m is active.
inline ActiveGraph active_graph(const PreferenceInstance& inst, const Matching& m) {
  require_stable(inst, m);
  const auto mate = mate_edges(inst, m);
  ActiveGraph g;
  g.base = m;
  g.active_at.assign(inst.num_i(), kNone);

  for (VertexIndex v = 0; v < inst.num_i(); ++v) {
    if (mate[v] == kNone) continue;
    const auto list = inst.prefs(v);
    for (std::size_t pos = inst.rank_at(mate[v], v); pos < list.size(); ++pos) {
      const EdgeIndex a = list[pos];
      const VertexIndex w = inst.j_end(a);
      if (mate[w] == kNone || inst.prefers(w, a, mate[w])) {
        g.admissible.push_back(a);
        if (g.active_at[v] == kNone) g.active_at[v] = a;
      }
    }
    if (g.active_at[v] != kNone) g.active.push_back(g.active_at[v]);
  }
  std::sort(g.admissible.begin(), g.admissible.end());
  std::sort(g.active.begin(), g.active.end());

  // Components of M + A.
  std::vector<std::size_t> parent(inst.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<EdgeIndex> edges(m.begin(), m.end());
  edges.insert(edges.end(), g.active.begin(), g.active.end());
  std::sort(edges.begin(), edges.end());
  for (EdgeIndex e : edges)
    parent[detail::find_root(parent, inst.i_end(e))] = detail::find_root(parent, inst.j_end(e));
  std::vector<std::uint32_t> comp_of_root(inst.num_vertices(), kNone);
  for (EdgeIndex e : edges) {
    const auto root = detail::find_root(parent, inst.i_end(e));
    if (comp_of_root[root] == kNone) {
      comp_of_root[root] = static_cast<std::uint32_t>(g.components.size());
      g.components.emplace_back();
    }
    g.components[comp_of_root[root]].edges.push_back(e);
  }
  for (VertexIndex v = 0; v < inst.num_vertices(); ++v) {
    const auto root = detail::find_root(parent, v);
    if (comp_of_root[root] != kNone) g.components[comp_of_root[root]].vertices.push_back(v);
  }

  // Each matching edge e = mw points to the matching edge at the J-end of m's
  // active edge; the cycles of this functional graph are the rotations.
  std::vector<EdgeIndex> succ(inst.num_edges(), kNone);
  for (EdgeIndex e : m) {
    const EdgeIndex a = g.active_at[inst.i_end(e)];
    if (a != kNone) succ[e] = mate[inst.j_end(a)];
  }
  std::vector<std::uint8_t> state(inst.num_edges(), 0);  // 0 new, 1 on path, 2 done
  for (EdgeIndex start : m) {
    std::vector<EdgeIndex> path;
    EdgeIndex e = start;
    while (e != kNone && state[e] == 0) {
      state[e] = 1;
      path.push_back(e);
      e = succ[e];
    }
    if (e != kNone && state[e] == 1) {
      std::vector<EdgeIndex> rm, ra;
      auto it = std::find(path.begin(), path.end(), e);
      for (; it != path.end(); ++it) {
        rm.push_back(*it);
        ra.push_back(g.active_at[inst.i_end(*it)]);
      }
      Rotation r = detail::canonical_rotation(std::move(rm), std::move(ra));
      auto& comp = g.components[comp_of_root[detail::find_root(parent, inst.i_end(e))]];
      if (comp.has_cycle) throw std::logic_error("component of the active graph has two cycles");
      comp.has_cycle = true;
      comp.cycle = r.cycle();
      g.rotations.push_back(std::move(r));
    }
    for (EdgeIndex x : path) state[x] = 2;
  }
  std::sort(g.rotations.begin(), g.rotations.end());
  return g;
}

inline std::vector<Rotation> rotations_of(const PreferenceInstance& inst, const Matching& m) {
  return active_graph(inst, m).rotations;
}

namespace detail {

inline Matching apply_rotation(const Matching& m, const Rotation& r) {
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e : m)
    if (std::find(r.matching.begin(), r.matching.end(), e) == r.matching.end()) edges.push_back(e);
  edges.insert(edges.end(), r.active.begin(), r.active.end());
  return Matching(std::move(edges));
}

}  // namespace detail

/// Eliminates a rotation exposed in M; the result is stable and above M.
inline Matching eliminate(const PreferenceInstance& inst, const Matching& m, const Rotation& r) {
  const auto rots = rotations_of(inst, m);
  if (!std::binary_search(rots.begin(), rots.end(), r))
    throw_validation("rotation is not exposed in the given matching");
  return detail::apply_rotation(m, r);
}

struct Trace {
  std::vector<Matching> matchings;  // Mmin .. Mmax
  std::vector<Rotation> rotations;  // rotations[i] maps matchings[i] to matchings[i+1]
};

enum class TraceChoice { CanonicalFirst, CanonicalLast };

/// A maximal chain from Mmin to Mmax, eliminating at each step the
/// canonically first (or last) exposed rotation.
inline Trace trace(const PreferenceInstance& inst, TraceChoice choice = TraceChoice::CanonicalFirst) {
  Trace t;
  Matching cur = deferred_acceptance(inst, Side::I);
  for (;;) {
    auto rots = rotations_of(inst, cur);
    t.matchings.push_back(cur);
    if (rots.empty()) break;
    Rotation r = choice == TraceChoice::CanonicalFirst ? std::move(rots.front()) : std::move(rots.back());
    cur = detail::apply_rotation(cur, r);
    t.rotations.push_back(std::move(r));
  }
  return t;
}

/// The rotation set R_G, in canonical order.
inline std::vector<Rotation> rotation_set(const PreferenceInstance& inst) {
  auto rots = trace(inst).rotations;
  std::sort(rots.begin(), rots.end());
  return rots;
}

/// Edges contained in every stable matching.
inline std::vector<EdgeIndex> fixed_edges(const PreferenceInstance& inst) {
  const Matching bottom = deferred_acceptance(inst, Side::I);
  std::vector<bool> moved(inst.num_edges(), false);
  for (const auto& r : rotation_set(inst))
    for (EdgeIndex e : r.matching) moved[e] = true;
  std::vector<EdgeIndex> out;
  for (EdgeIndex e : bottom)
    if (!moved[e]) out.push_back(e);
  return out;
}

/// Edges belonging to at least one stable matching: Mmin plus all rotation edges.
inline std::vector<EdgeIndex> union_graph(const PreferenceInstance& inst) {
  const Matching bottom = deferred_acceptance(inst, Side::I);
  std::vector<EdgeIndex> out(bottom.begin(), bottom.end());
  for (const auto& r : rotation_set(inst)) {
    out.insert(out.end(), r.matching.begin(), r.matching.end());
    out.insert(out.end(), r.active.begin(), r.active.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Sum over I-vertices of the 1-based position of the matched edge.
inline std::uint64_t matching_rank(const PreferenceInstance& inst, const Matching& m) {
  validate_matching(inst, m);
  std::uint64_t rank = 0;
  for (EdgeIndex e : m) rank += inst.rank(e, Side::I);
  return rank;
}

inline bool is_unique(const PreferenceInstance& inst) {
  return active_graph(inst, deferred_acceptance(inst, Side::I)).is_forest();
}

/// The rotations eliminated on any chain from M up to L (M must precede L).
inline std::vector<Rotation> rotations_between(const PreferenceInstance& inst, const Matching& m,
                                               const Matching& l) {
  const Relation rel = compare(inst, m, l);
  if (rel != Relation::Less && rel != Relation::Equal)
    throw_validation("first matching does not precede the second");
  const auto target = mate_edges(inst, l);
  std::vector<Rotation> out;
  Matching cur = m;
  while (cur != l) {
    bool advanced = false;
    for (auto& r : rotations_of(inst, cur)) {
      // Eliminating r stays below L iff no I-vertex of r moves past its L-edge.
      bool fits = true;
      for (EdgeIndex a : r.active) {
        const VertexIndex v = inst.i_end(a);
        if (inst.prefers(v, target[v], a)) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      cur = detail::apply_rotation(cur, r);
      out.push_back(std::move(r));
      advanced = true;
      break;
    }
    if (!advanced) throw std::logic_error("no rotation leads toward the target matching");
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace stablematch
