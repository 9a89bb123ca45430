#pragma once

// Minimum-weight closed sets by reduction to a minimum s-t cut.
//
// A node set X is closed when no arc enters X from outside. Positive nodes
// hang from the source, negative nodes feed the sink, original arcs are
// uncapacitated; X is the complement of the source side of a minimum cut and
// zeta(X) = cut capacity + zeta(negative nodes).

#include <algorithm>
#include <utility>
#include <vector>

#include "stablematch/errors.hpp"
#include "stablematch/maxflow.hpp"
#include "stablematch/rational.hpp"

namespace stablematch {

struct ClosureInstance {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  std::vector<Rational> weights;
};

struct ClosureResult {
  std::vector<std::size_t> members;  // sorted
  Rational weight;
  Rational cut_capacity;
};

inline bool is_closed(const ClosureInstance& q, const std::vector<bool>& in_set) {
  for (const auto& [u, v] : q.arcs)
    if (in_set[v] && !in_set[u]) return false;
  return true;
}

namespace detail {

/// Strongly connected components (Kosaraju, iterative). Returns the
/// component index of every node.
inline std::vector<std::size_t> strong_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& arcs,
    std::size_t& count) {
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (const auto& [u, v] : arcs) {
    out[u].push_back(v);
    in[v].push_back(u);
  }
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < out[u].size()) {
        const auto v = out[u][i++];
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back({v, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<std::size_t> comp(n, static_cast<std::size_t>(-1));
  count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != static_cast<std::size_t>(-1)) continue;
    std::vector<std::size_t> stack{*it};
    comp[*it] = count;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : in[u])
        if (comp[v] == static_cast<std::size_t>(-1)) {
          comp[v] = count;
          stack.push_back(v);
        }
    }
    ++count;
  }
  return comp;
}

}  // namespace detail

/// Minimum-weight closed set. Among optimal sets the inclusion-minimal one is
/// returned, which is also the one of minimum cardinality.
inline ClosureResult min_weight_closure(const ClosureInstance& q) {
  if (q.weights.size() != q.nodes) throw_validation("closure instance needs one weight per node");
  for (const auto& [u, v] : q.arcs)
    if (u >= q.nodes || v >= q.nodes) throw_validation("closure arc endpoint out of range");

  // Cycles cannot be split by a closed set: contract them.
  std::size_t k = 0;
  const auto comp = detail::strong_components(q.nodes, q.arcs, k);
  std::vector<Rational> zeta(k, Rational(0));
  for (std::size_t v = 0; v < q.nodes; ++v) zeta[comp[v]] += q.weights[v];

  const std::size_t s = k, t = k + 1;
  FlowNetwork<Rational> net(k + 2, s, t);
  Rational negative_total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (zeta[c] > 0) net.add_arc(s, c, zeta[c]);
    if (zeta[c] < 0) {
      net.add_arc(c, t, -zeta[c]);
      negative_total += zeta[c];
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> contracted;
  for (const auto& [u, v] : q.arcs)
    if (comp[u] != comp[v]) contracted.emplace_back(comp[u], comp[v]);
  std::sort(contracted.begin(), contracted.end());
  contracted.erase(std::unique(contracted.begin(), contracted.end()), contracted.end());
  for (const auto& [u, v] : contracted) net.add_infinite_arc(u, v);

  const auto flow = max_flow_min_cut(net);
  ClosureResult result;
  result.cut_capacity = flow.value;
  result.weight = 0;
  for (std::size_t v = 0; v < q.nodes; ++v) {
    if (flow.max_source_side[comp[v]]) continue;
    result.members.push_back(v);
    result.weight += q.weights[v];
  }
  if (result.weight != result.cut_capacity + negative_total)
    throw std::logic_error("closure weight does not match the cut capacity");
  return result;
}

}  // namespace stablematch
