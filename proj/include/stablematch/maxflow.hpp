#pragma once

// Dinic maximum flow with exact capacities, plus minimum cut recovery.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "stablematch/errors.hpp"

namespace stablematch {

template <class Cap>
class FlowNetwork {
 public:
  struct Arc {
    std::size_t from;
    std::size_t to;
    std::optional<Cap> capacity;  // nullopt means infinite
  };

  FlowNetwork(std::size_t nodes, std::size_t source, std::size_t sink)
      : nodes_(nodes), source_(source), sink_(sink) {
    if (source >= nodes || sink >= nodes || source == sink)
      throw_validation("flow network needs distinct source and sink");
  }

  std::size_t add_arc(std::size_t from, std::size_t to, Cap capacity) {
    if (capacity < Cap(0)) throw_validation("negative arc capacity");
    return push(from, to, std::move(capacity));
  }

  std::size_t add_infinite_arc(std::size_t from, std::size_t to) {
    return push(from, to, std::nullopt);
  }

  std::size_t num_nodes() const { return nodes_; }
  std::size_t source() const { return source_; }
  std::size_t sink() const { return sink_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

 private:
  std::size_t push(std::size_t from, std::size_t to, std::optional<Cap> capacity) {
    if (from >= nodes_ || to >= nodes_) throw_validation("arc endpoint out of range");
    arcs_.push_back({from, to, std::move(capacity)});
    return arcs_.size() - 1;
  }

  std::size_t nodes_;
  std::size_t source_;
  std::size_t sink_;
  std::vector<Arc> arcs_;
};

template <class Cap>
struct MaxFlowResult {
  Cap value{};
  std::vector<Cap> arc_flow;
  /// Nodes reachable from the source in the residual network: the source
  /// side of the inclusion-minimal minimum cut.
  std::vector<bool> min_source_side;
  /// Complement of the nodes that reach the sink in the residual network:
  /// the source side of the inclusion-maximal minimum cut.
  std::vector<bool> max_source_side;
};

template <class Cap>
Cap cut_capacity(const FlowNetwork<Cap>& net, const std::vector<bool>& source_side,
                 const Cap& infinity) {
  Cap total{0};
  for (const auto& a : net.arcs())
    if (source_side[a.from] && !source_side[a.to]) total += a.capacity ? *a.capacity : infinity;
  return total;
}

namespace detail {

template <class Cap>
class Dinic {
 public:
  struct Edge {
    std::size_t to;
    Cap residual;
  };

  explicit Dinic(std::size_t n) : adj_(n), level_(n), it_(n) {}

  std::size_t add(std::size_t from, std::size_t to, const Cap& cap) {
    const std::size_t id = edges_.size();
    edges_.push_back({to, cap});
    adj_[from].push_back(id);
    edges_.push_back({from, Cap(0)});
    adj_[to].push_back(id + 1);
    return id;
  }

  Cap run(std::size_t s, std::size_t t) {
    Cap flow{0};
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      for (;;) {
        Cap pushed = dfs(s, t, std::nullopt);
        if (pushed == Cap(0)) break;
        flow += pushed;
      }
    }
    return flow;
  }

  const Cap& residual(std::size_t id) const { return edges_[id].residual; }

  std::vector<bool> reachable_from(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.residual > Cap(0) && !seen[e.to]) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

  std::vector<bool> reaching(std::size_t t) const {
    // u reaches t iff some residual edge u->x has x reaching t; walk reverse edges.
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{t};
    seen[t] = true;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (auto id : adj_[x]) {
        // id is an edge x->u; its partner u->x has residual edges_[id ^ 1].
        const auto u = edges_[id].to;
        if (edges_[id ^ 1].residual > Cap(0) && !seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    return seen;
  }

 private:
  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto id : adj_[u]) {
        const auto& e = edges_[id];
        if (e.residual > Cap(0) && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Cap dfs(std::size_t u, std::size_t t, const std::optional<Cap>& limit) {
    if (u == t) return limit ? *limit : Cap(0);
    for (; it_[u] < adj_[u].size(); ++it_[u]) {
      const auto id = adj_[u][it_[u]];
      auto& e = edges_[id];
      if (e.residual <= Cap(0) || level_[e.to] != level_[u] + 1) continue;
      const Cap bound = limit ? std::min(*limit, e.residual) : e.residual;
      Cap pushed = dfs(e.to, t, bound);
      if (pushed > Cap(0)) {
        e.residual -= pushed;
        edges_[id ^ 1].residual += pushed;
        return pushed;
      }
    }
    return Cap(0);
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace detail

/// Maximum s-t flow and minimum cuts. Infinite arcs are modelled with
/// capacity (sum of finite capacities) + 1; a cut using one is rejected.
template <class Cap>
MaxFlowResult<Cap> max_flow_min_cut(const FlowNetwork<Cap>& net) {
  Cap infinity{1};
  for (const auto& a : net.arcs())
    if (a.capacity) infinity += *a.capacity;

  detail::Dinic<Cap> solver(net.num_nodes());
  std::vector<std::size_t> ids;
  ids.reserve(net.arcs().size());
  for (const auto& a : net.arcs()) ids.push_back(solver.add(a.from, a.to, a.capacity ? *a.capacity : infinity));

  MaxFlowResult<Cap> result;
  result.value = solver.run(net.source(), net.sink());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const auto& a = net.arcs()[k];
    result.arc_flow.push_back((a.capacity ? *a.capacity : infinity) - solver.residual(ids[k]));
  }
  result.min_source_side = solver.reachable_from(net.source());
  const auto reach_t = solver.reaching(net.sink());
  result.max_source_side.resize(net.num_nodes());
  for (std::size_t v = 0; v < net.num_nodes(); ++v) result.max_source_side[v] = !reach_t[v];

  if (result.value >= infinity) throw std::logic_error("no finite cut separates source and sink");
  for (const auto* side : {&result.min_source_side, &result.max_source_side}) {
    if (!(*side)[net.source()] || (*side)[net.sink()] ||
        cut_capacity(net, *side, infinity) != result.value)
      throw std::logic_error("flow value differs from cut capacity");
  }
  return result;
}

}  // namespace stablematch
