#pragma once

// The rotation poset: a sparse generating digraph H over R_G whose
// reachability is the precedence order, and the ideal <-> stable matching
// correspondence built on it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablematch/instance.hpp"
#include "stablematch/rotations.hpp"
#include "stablematch/stability.hpp"

namespace stablematch {

enum ArcKind : std::uint8_t {
  kSharedVertex = 1,   // both rotations pass through a common vertex
  kSuccessorRule = 2,  // C makes the edge D would move onto inadmissible
};

struct RotationArc {
  std::uint32_t from;
  std::uint32_t to;
  std::uint8_t kinds;

  friend bool operator==(const RotationArc&, const RotationArc&) = default;
};

/// A downward-closed rotation set, as sorted rotation indices.
struct Ideal {
  std::vector<std::uint32_t> members;

  Ideal() = default;
  explicit Ideal(std::vector<std::uint32_t> m) : members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  bool contains(std::uint32_t r) const {
    return std::binary_search(members.begin(), members.end(), r);
  }
  friend auto operator<=>(const Ideal&, const Ideal&) = default;
};

class RotationDigraph {
 public:
  RotationDigraph() = default;
  RotationDigraph(Matching bottom, std::vector<Rotation> rotations, std::vector<RotationArc> arcs)
      : bottom_(std::move(bottom)), rotations_(std::move(rotations)), arcs_(std::move(arcs)) {
    out_.resize(rotations_.size());
    in_.resize(rotations_.size());
    for (const auto& a : arcs_) {
      out_[a.from].push_back(a.to);
      in_[a.to].push_back(a.from);
    }
  }

  const Matching& bottom() const { return bottom_; }
  const std::vector<Rotation>& rotations() const { return rotations_; }
  const std::vector<RotationArc>& arcs() const { return arcs_; }
  std::size_t size() const { return rotations_.size(); }
  const std::vector<std::uint32_t>& successors(std::uint32_t r) const { return out_.at(r); }
  const std::vector<std::uint32_t>& predecessors(std::uint32_t r) const { return in_.at(r); }

  std::optional<std::uint32_t> index_of(const Rotation& r) const {
    const auto it = std::lower_bound(rotations_.begin(), rotations_.end(), r);
    if (it == rotations_.end() || *it != r) return std::nullopt;
    return static_cast<std::uint32_t>(it - rotations_.begin());
  }

  /// True iff a directed path of positive length leads from `from` to `to`.
  bool reaches(std::uint32_t from, std::uint32_t to) const {
    std::vector<bool> seen(size(), false);
    std::vector<std::uint32_t> stack{from};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : out_[u]) {
        if (v == to) return true;
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return false;
  }

 private:
  Matching bottom_;
  std::vector<Rotation> rotations_;
  std::vector<RotationArc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
};

enum class SuccessorRule {
  Generalized,  // every non-union edge strictly between a and e at w
  Literal,      // only the immediate successor of a rotation edge at its I-end
};

/// Builds H. Arcs come from two local rules:
///  * shared vertex: the rotations through a vertex v are totally ordered by
///    their matching edges at v (order of <_v for v in I, reversed for v in
///    J); consecutive ones are joined.
///  * successor rule: C has matching edge e and active edge a at w, and
///    b = m'w with a <_w b <_w e lies on no rotation. If D is the rotation
///    holding the last stable-matching edge of m' before b as a matching edge,
///    eliminating D first would make b active at m'; so C precedes D.
///    The Literal variant only looks at b directly after a matching edge of D
///    in the list of m'; it misses arcs when an edge that is never stable
///    sits between them, and is kept for comparison.
/// Arcs implied by a longer path are dropped afterwards.
inline RotationDigraph build_digraph(const PreferenceInstance& inst,
                                     SuccessorRule rule = SuccessorRule::Generalized) {
  Matching bottom = deferred_acceptance(inst, Side::I);
  std::vector<Rotation> rots = rotation_set(inst);
  const auto n = static_cast<std::uint32_t>(rots.size());

  std::vector<std::uint32_t> matching_rot(inst.num_edges(), kNone);
  std::vector<bool> in_union(inst.num_edges(), false);
  for (EdgeIndex e : bottom) in_union[e] = true;
  for (std::uint32_t r = 0; r < n; ++r) {
    for (EdgeIndex e : rots[r].matching) {
      matching_rot[e] = r;
      in_union[e] = true;
    }
    for (EdgeIndex a : rots[r].active) in_union[a] = true;
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> shared, successor;

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> at_vertex(inst.num_vertices());
  for (std::uint32_t r = 0; r < n; ++r)
    for (EdgeIndex e : rots[r].matching)
      for (VertexIndex v : {inst.i_end(e), inst.j_end(e)})
        at_vertex[v].emplace_back(inst.rank_at(e, v), r);
  for (VertexIndex v = 0; v < inst.num_vertices(); ++v) {
    auto& list = at_vertex[v];
    std::sort(list.begin(), list.end());
    if (inst.side(v) == Side::J) std::reverse(list.begin(), list.end());
    for (std::size_t i = 1; i < list.size(); ++i) shared.emplace(list[i - 1].second, list[i].second);
  }

  // Rotation owning the last union edge strictly before each edge at its
  // I-end (Literal: the edge immediately before it).
  std::vector<std::uint32_t> owner_before(inst.num_edges(), kNone);
  for (VertexIndex m = 0; m < inst.num_i(); ++m) {
    EdgeIndex last = kNone;
    for (EdgeIndex e : inst.prefs(m)) {
      owner_before[e] = last == kNone ? kNone : matching_rot[last];
      if (in_union[e] || rule == SuccessorRule::Literal) last = e;
    }
  }
  for (std::uint32_t c = 0; c < n; ++c) {
    const auto& rot = rots[c];
    const std::size_t k = rot.size();
    for (std::size_t i = 0; i < k; ++i) {
      const EdgeIndex e = rot.matching[i];
      const EdgeIndex a = rot.active[(i + k - 1) % k];  // the active edge entering w
      const VertexIndex w = inst.j_end(e);
      const auto list = inst.prefs(w);
      for (std::size_t pos = inst.rank_at(a, w); pos + 1 < inst.rank_at(e, w); ++pos) {
        const EdgeIndex b = list[pos];
        if (in_union[b]) continue;
        const std::uint32_t d = owner_before[b];
        if (d != kNone && d != c) successor.emplace(c, d);
      }
    }
  }

  std::set<std::pair<std::uint32_t, std::uint32_t>> all(shared);
  all.insert(successor.begin(), successor.end());
  std::vector<std::vector<std::uint32_t>> out(n);
  for (const auto& [u, v] : all) out[u].push_back(v);

  // Kahn's algorithm; a leftover node means H has a cycle.
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [u, v] : all) ++indeg[v];
  std::vector<std::uint32_t> ready, topo;
  for (std::uint32_t r = 0; r < n; ++r)
    if (indeg[r] == 0) ready.push_back(r);
  while (!ready.empty()) {
    const auto u = ready.back();
    ready.pop_back();
    topo.push_back(u);
    for (auto v : out[u])
      if (--indeg[v] == 0) ready.push_back(v);
  }
  if (topo.size() != n) throw std::logic_error("rotation digraph contains a cycle");

  // Transitive reduction: keep only arcs (u, v) with no longer u -> v path,
  // so that every arc is a covering pair of the order.
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[topo[i]] = i;
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(n, std::vector<std::uint64_t>(words, 0));
  std::set<std::pair<std::uint32_t, std::uint32_t>> kept;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const auto u = *it;
    auto succ = out[u];
    std::sort(succ.begin(), succ.end(), [&](auto x, auto y) { return pos[x] < pos[y]; });
    auto& mine = reach[u];
    for (auto v : succ) {
      if (mine[v / 64] >> (v % 64) & 1) continue;
      kept.emplace(u, v);
      mine[v / 64] |= std::uint64_t{1} << (v % 64);
      for (std::size_t w = 0; w < words; ++w) mine[w] |= reach[v][w];
    }
  }

  std::vector<RotationArc> arcs;
  for (const auto& [u, v] : kept) {
    std::uint8_t kinds = 0;
    if (shared.count({u, v})) kinds |= kSharedVertex;
    if (successor.count({u, v})) kinds |= kSuccessorRule;
    arcs.push_back({u, v, kinds});
  }
  return RotationDigraph(std::move(bottom), std::move(rots), std::move(arcs));
}

inline void require_rotation_index(const RotationDigraph& g, std::uint32_t r) {
  if (r >= g.size()) throw_validation("unknown rotation index " + std::to_string(r));
}

/// C strictly precedes D in the rotation poset.
inline bool precedes(const RotationDigraph& g, std::uint32_t c, std::uint32_t d) {
  require_rotation_index(g, c);
  require_rotation_index(g, d);
  return c != d && g.reaches(c, d);
}

inline bool is_ideal(const RotationDigraph& g, const Ideal& s) {
  for (auto r : s.members) {
    require_rotation_index(g, r);
    for (auto p : g.predecessors(r))
      if (!s.contains(p)) return false;
  }
  return true;
}

inline void require_ideal(const RotationDigraph& g, const Ideal& s) {
  if (!is_ideal(g, s)) throw_validation("rotation set is not an ideal (not downward closed)");
}

/// The stable matching obtained from Mmin by eliminating the rotations of S.
/// Matching and active edge sets of distinct rotations are disjoint, so this
/// is Mmin plus the active edges minus the matching edges of S.
inline Matching ideal_to_matching(const RotationDigraph& g, const Ideal& s) {
  require_ideal(g, s);
  std::vector<EdgeIndex> removed, added;
  for (auto r : s.members) {
    const auto& rot = g.rotations()[r];
    removed.insert(removed.end(), rot.matching.begin(), rot.matching.end());
    added.insert(added.end(), rot.active.begin(), rot.active.end());
  }
  std::sort(removed.begin(), removed.end());
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e : g.bottom())
    if (!std::binary_search(removed.begin(), removed.end(), e)) edges.push_back(e);
  for (EdgeIndex e : added)
    if (!std::binary_search(removed.begin(), removed.end(), e)) edges.push_back(e);
  return Matching(std::move(edges));
}

inline Ideal matching_to_ideal(const PreferenceInstance& inst, const RotationDigraph& g,
                               const Matching& m) {
  std::vector<std::uint32_t> members;
  for (const auto& r : rotations_between(inst, g.bottom(), m)) {
    const auto idx = g.index_of(r);
    if (!idx) throw std::logic_error("rotation missing from the rotation digraph");
    members.push_back(*idx);
  }
  return Ideal(std::move(members));
}

/// Maximal elements of an ideal.
inline std::vector<std::uint32_t> antichain_of(const RotationDigraph& g, const Ideal& s) {
  require_ideal(g, s);
  std::vector<std::uint32_t> out;
  for (auto r : s.members) {
    const auto& succ = g.successors(r);
    if (std::none_of(succ.begin(), succ.end(), [&](auto v) { return s.contains(v); }))
      out.push_back(r);
  }
  return out;
}

/// The ideal generated downward by a set of rotations.
inline Ideal ideal_generated_by(const RotationDigraph& g, std::span<const std::uint32_t> tops) {
  std::vector<bool> in(g.size(), false);
  std::vector<std::uint32_t> stack;
  for (auto r : tops) {
    require_rotation_index(g, r);
    if (!in[r]) in[r] = true, stack.push_back(r);
  }
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto p : g.predecessors(u))
      if (!in[p]) in[p] = true, stack.push_back(p);
  }
  std::vector<std::uint32_t> members;
  for (std::uint32_t r = 0; r < g.size(); ++r)
    if (in[r]) members.push_back(r);
  return Ideal(std::move(members));
}

namespace detail {

/// Depth-first enumeration of ideals in lexicographic order of their sorted
/// index sequences. The current prefix s is kept extendable: its downward
/// closure D meets [0, max s] exactly in s; `pending` holds D \ s.
class IdealEnumerator {
 public:
  IdealEnumerator(const RotationDigraph& g, const std::function<bool(const Ideal&)>& visit)
      : g_(g), visit_(visit), in_down_(g.size(), false) {}

  bool run() { return descend(-1); }

 private:
  bool descend(long last) {
    if (pending_.empty()) {
      current_.members = prefix_;
      if (!visit_(current_)) return false;
    }
    const long n = static_cast<long>(g_.size());
    const long hi = pending_.empty() ? n - 1 : static_cast<long>(*pending_.begin());
    for (long j = last + 1; j <= hi; ++j) {
      const auto u = static_cast<std::uint32_t>(j);
      std::vector<std::uint32_t> added;
      bool feasible = true;
      const bool was_pending = in_down_[u];
      if (!was_pending) {
        in_down_[u] = true;
        std::vector<std::uint32_t> stack{u};
        while (!stack.empty()) {
          const auto x = stack.back();
          stack.pop_back();
          for (auto p : g_.predecessors(x)) {
            if (in_down_[p]) continue;
            in_down_[p] = true;
            added.push_back(p);
            stack.push_back(p);
            if (p < u) feasible = false;
          }
        }
      }
      bool keep_going = true;
      if (feasible) {
        if (was_pending) pending_.erase(u);
        pending_.insert(added.begin(), added.end());
        prefix_.push_back(u);
        keep_going = descend(j);
        prefix_.pop_back();
        for (auto p : added) pending_.erase(p);
        if (was_pending) pending_.insert(u);
      }
      for (auto p : added) in_down_[p] = false;
      if (!was_pending) in_down_[u] = false;
      if (!keep_going) return false;
    }
    return true;
  }

  const RotationDigraph& g_;
  const std::function<bool(const Ideal&)>& visit_;
  std::vector<bool> in_down_;
  std::set<std::uint32_t> pending_;
  std::vector<std::uint32_t> prefix_;
  Ideal current_;
};

}  // namespace detail

/// Calls visit(ideal) for every ideal of H in lexicographic order of sorted
/// index sets, until visit returns false. Memory is linear in |R_G|.
/// Returns false if stopped early.
inline bool for_each_ideal(const RotationDigraph& g, const std::function<bool(const Ideal&)>& visit) {
  return detail::IdealEnumerator(g, visit).run();
}

/// Streams every stable matching, in the order of their ideals. Returns false
/// if stopped early by the visitor.
inline bool for_each_stable_matching(const RotationDigraph& g,
                                     const std::function<bool(const Matching&)>& visit) {
  return for_each_ideal(g, [&](const Ideal& s) { return visit(ideal_to_matching(g, s)); });
}

/// All stable matchings, each once. Throws ErrorKind::CapExceeded when there
/// are more than `cap`.
inline std::vector<Matching> enumerate_stable_matchings(const PreferenceInstance& inst,
                                                        std::optional<std::uint64_t> cap = {}) {
  const auto g = build_digraph(inst);
  std::vector<Matching> out;
  const bool complete = for_each_stable_matching(g, [&](const Matching& m) {
    if (cap && out.size() >= *cap) return false;
    out.push_back(m);
    return true;
  });
  if (!complete)
    throw Error(ErrorKind::CapExceeded,
                "more than " + std::to_string(*cap) + " stable matchings");
  return out;
}

/// Number of stable matchings, or nullopt when it exceeds `cap`. Exponential
/// in the worst case (the count can be exponential in the instance size).
inline std::optional<std::uint64_t> count_stable_matchings(const RotationDigraph& g,
                                                           std::optional<std::uint64_t> cap = {}) {
  std::uint64_t count = 0;
  const bool complete = for_each_ideal(g, [&](const Ideal&) {
    if (cap && count >= *cap) return false;
    ++count;
    return true;
  });
  if (!complete) return std::nullopt;
  return count;
}

inline std::optional<std::uint64_t> count_stable_matchings(const PreferenceInstance& inst,
                                                           std::optional<std::uint64_t> cap = {}) {
  return count_stable_matchings(build_digraph(inst), cap);
}

inline const char* arc_label(std::uint8_t kinds) {
  switch (kinds) {
    case kSharedVertex: return "shared-vertex";
    case kSuccessorRule: return "successor-rule";
    default: return "shared-vertex+successor-rule";
  }
}

/// Graphviz rendering of H.
inline std::string to_dot(const PreferenceInstance& inst, const RotationDigraph& g) {
  std::ostringstream out;
  out << "digraph H {\n";
  for (std::size_t r = 0; r < g.size(); ++r) {
    std::vector<EdgeIndex> edges = g.rotations()[r].matching;
    std::sort(edges.begin(), edges.end());
    out << "  R" << r << " [label=\"R" << r << ": [" << format_edges(inst, edges) << "]\"];\n";
  }
  for (const auto& a : g.arcs())
    out << "  R" << a.from << " -> R" << a.to << " [label=\"" << arc_label(a.kinds) << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace stablematch
