#pragma once

#include <deque>
#include <vector>

#include "stablematch/instance.hpp"

namespace stablematch {

struct StabilityReport {
  bool stable = true;
  std::vector<EdgeIndex> blocking;  // canonical order
};

/// An edge outside M blocks it when each endpoint is uncovered or strictly
/// prefers the edge to its matched edge.
inline StabilityReport blocking_edges(const PreferenceInstance& inst, const Matching& m) {
  const auto mate = mate_edges(inst, m);
  StabilityReport report;
  for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
    if (m.contains(e)) continue;
    auto wants = [&](VertexIndex v) { return mate[v] == kNone || inst.prefers(v, e, mate[v]); };
    if (wants(inst.i_end(e)) && wants(inst.j_end(e))) report.blocking.push_back(e);
  }
  report.stable = report.blocking.empty();
  return report;
}

inline bool is_stable(const PreferenceInstance& inst, const Matching& m) {
  return blocking_edges(inst, m).stable;
}

inline void require_stable(const PreferenceInstance& inst, const Matching& m,
                           const char* what = "matching") {
  const auto report = blocking_edges(inst, m);
  if (!report.stable)
    throw_validation(std::string(what) + " is not stable (blocked by '" +
                     inst.edge_id(report.blocking.front()) + "')");
}

/// Gale-Shapley deferred acceptance with the given side proposing. Proposers
/// are queued FIFO (by default in id order); one who exhausts its list stays
/// unmatched.
/// With I proposing the result is the I-optimal stable matching (Mmin), with J
/// proposing the J-optimal one (Mmax).
inline Matching deferred_acceptance(const PreferenceInstance& inst, Side proposing,
                                    std::span<const VertexIndex> queue_order) {
  const std::size_t n = inst.num_vertices();
  std::vector<std::uint32_t> next(n, 0);  // position in the proposer's list
  std::vector<EdgeIndex> held(n, kNone);  // edge held by each receiver
  std::deque<VertexIndex> free(queue_order.begin(), queue_order.end());
  {
    std::vector<VertexIndex> sorted(queue_order.begin(), queue_order.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted != inst.vertices(proposing))
      throw_validation("proposer queue must list every proposing vertex once");
  }

  const Side receiving = opposite(proposing);
  while (!free.empty()) {
    const VertexIndex p = free.front();
    free.pop_front();
    const auto list = inst.prefs(p);
    while (next[p] < list.size()) {
      const EdgeIndex e = list[next[p]++];
      const VertexIndex r = inst.end(e, receiving);
      if (held[r] == kNone) {
        held[r] = e;
        break;
      }
      if (inst.prefers(r, e, held[r])) {
        free.push_back(inst.end(held[r], proposing));
        held[r] = e;
        break;
      }
    }
  }
  std::vector<EdgeIndex> edges;
  for (EdgeIndex e : held)
    if (e != kNone) edges.push_back(e);
  return Matching(std::move(edges));
}

inline Matching deferred_acceptance(const PreferenceInstance& inst, Side proposing) {
  const auto order = inst.canonical_vertices(proposing);
  return deferred_acceptance(inst, proposing, order);
}

inline std::vector<VertexIndex> covered_vertices(const PreferenceInstance& inst, const Matching& m) {
  std::vector<VertexIndex> out;
  for (EdgeIndex e : m) {
    out.push_back(inst.i_end(e));
    out.push_back(inst.j_end(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The vertex set covered by every stable matching.
inline std::vector<VertexIndex> covered_set(const PreferenceInstance& inst) {
  return covered_vertices(inst, deferred_acceptance(inst, Side::I));
}

}  // namespace stablematch
