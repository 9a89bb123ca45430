#include <gtest/gtest.h>

#include <random>

#include "support/random_instance.hpp"

using namespace stablematch;

namespace {

std::vector<std::size_t> side_members(const std::vector<bool>& side) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < side.size(); ++v)
    if (side[v]) out.push_back(v);
  return out;
}

/// Exhaustive minimum over closed sets; ties to the smallest set, then lexicographic.
std::pair<std::vector<std::size_t>, Rational> brute_closure(const ClosureInstance& q) {
  std::optional<std::pair<std::vector<std::size_t>, Rational>> best;
  for (std::uint32_t mask = 0; mask < (1u << q.nodes); ++mask) {
    std::vector<bool> in(q.nodes);
    std::vector<std::size_t> members;
    Rational w = 0;
    for (std::size_t v = 0; v < q.nodes; ++v)
      if (mask >> v & 1) in[v] = true, members.push_back(v), w += q.weights[v];
    if (!is_closed(q, in)) continue;
    if (!best || w < best->second ||
        (w == best->second && std::pair(members.size(), members) < std::pair(best->first.size(), best->first)))
      best.emplace(members, w);
  }
  return *best;
}

}  // namespace

TEST(MaxFlow, SinglePath) {
  FlowNetwork<Rational> net(3, 0, 2);
  net.add_arc(0, 1, 1);
  net.add_arc(1, 2, 1);
  const auto r = max_flow_min_cut(net);
  EXPECT_EQ(r.value, 1);
  EXPECT_EQ(side_members(r.min_source_side), std::vector<std::size_t>{0});
  EXPECT_EQ(side_members(r.max_source_side), (std::vector<std::size_t>{0, 1}));
}

TEST(MaxFlow, TwoBranches) {
  // s=0, a=1, b=2, t=3
  FlowNetwork<Rational> net(4, 0, 3);
  net.add_arc(0, 1, 2);
  net.add_arc(0, 2, 3);
  net.add_arc(1, 3, 1);
  net.add_arc(2, 3, 5);
  const auto r = max_flow_min_cut(net);
  EXPECT_EQ(r.value, 4);
  EXPECT_EQ(r.arc_flow, (std::vector<Rational>{1, 3, 1, 3}));
}

TEST(MaxFlow, FractionalCapacities) {
  FlowNetwork<Rational> net(3, 0, 2);
  net.add_arc(0, 1, Rational(1, 3));
  net.add_arc(0, 1, Rational(1, 6));
  net.add_arc(1, 2, 1);
  EXPECT_EQ(max_flow_min_cut(net).value, Rational(1, 2));
}

TEST(MaxFlow, DisconnectedSink) {
  FlowNetwork<Rational> net(3, 0, 2);
  net.add_arc(0, 1, 7);
  const auto r = max_flow_min_cut(net);
  EXPECT_EQ(r.value, 0);
  EXPECT_FALSE(r.max_source_side[2]);
}

TEST(MaxFlow, InfiniteArcsAvoidedByCut) {
  FlowNetwork<Rational> net(4, 0, 3);
  net.add_arc(0, 1, 5);
  net.add_infinite_arc(1, 2);
  net.add_arc(2, 3, 2);
  const auto r = max_flow_min_cut(net);
  EXPECT_EQ(r.value, 2);
  EXPECT_TRUE(r.min_source_side[2]);
}

TEST(MaxFlow, OnlyInfinitePathIsAnError) {
  FlowNetwork<Rational> net(2, 0, 1);
  net.add_infinite_arc(0, 1);
  EXPECT_THROW(max_flow_min_cut(net), std::logic_error);
}

TEST(MaxFlow, InvalidNetworks) {
  EXPECT_THROW(FlowNetwork<Rational>(2, 0, 0), Error);
  EXPECT_THROW(FlowNetwork<Rational>(2, 0, 2), Error);
  FlowNetwork<Rational> net(2, 0, 1);
  EXPECT_THROW(net.add_arc(0, 1, -1), Error);
  EXPECT_THROW(net.add_arc(0, 5, 1), Error);
}

TEST(MaxFlow, RandomDuality) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> cap(0, 9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 6;
    FlowNetwork<Rational> net(n, 0, n - 1);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && rng() % 3 == 0) net.add_arc(u, v, cap(rng));
    const auto r = max_flow_min_cut(net);
    // brute-force min cut
    Rational best = -1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!(mask & 1) || (mask >> (n - 1) & 1)) continue;
      std::vector<bool> side(n);
      for (std::size_t v = 0; v < n; ++v) side[v] = mask >> v & 1;
      const auto c = cut_capacity(net, side, Rational(0));
      if (best < 0 || c < best) best = c;
    }
    EXPECT_EQ(r.value, best);
  }
}

TEST(Closure, TwoRotations) {
  ClosureInstance q{2, {{0, 1}}, {-1, 1}};
  const auto r = min_weight_closure(q);
  EXPECT_EQ(r.members, std::vector<std::size_t>{0});
  EXPECT_EQ(r.weight, -1);
  EXPECT_EQ(r.cut_capacity, 0);
}

TEST(Closure, AllPositiveGivesEmpty) {
  ClosureInstance q{3, {{0, 1}}, {1, 2, Rational(1, 2)}};
  const auto r = min_weight_closure(q);
  EXPECT_TRUE(r.members.empty());
  EXPECT_EQ(r.weight, 0);
}

TEST(Closure, AllNegativeNoArcsGivesEverything) {
  ClosureInstance q{3, {}, {-1, -2, Rational(-1, 4)}};
  const auto r = min_weight_closure(q);
  EXPECT_EQ(r.members, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.weight, Rational(-13, 4));
}

TEST(Closure, ZeroWeightsGiveEmpty) {
  ClosureInstance q{3, {{0, 1}, {1, 2}}, {0, 0, 0}};
  EXPECT_TRUE(min_weight_closure(q).members.empty());
}

TEST(Closure, PredecessorForcedIn) {
  // taking 1 (-5) requires 0 (+2)
  ClosureInstance q{2, {{0, 1}}, {2, -5}};
  const auto r = min_weight_closure(q);
  EXPECT_EQ(r.members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.weight, -3);
}

TEST(Closure, CycleIsContracted) {
  ClosureInstance q{3, {{0, 1}, {1, 0}, {1, 2}}, {-3, 1, 1}};
  const auto r = min_weight_closure(q);
  EXPECT_EQ(r.members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.weight, -2);
  ClosureInstance heavy{2, {{0, 1}, {1, 0}}, {-3, 4}};
  EXPECT_TRUE(min_weight_closure(heavy).members.empty());
}

TEST(Closure, Errors) {
  EXPECT_THROW(min_weight_closure(ClosureInstance{2, {}, {1}}), Error);
  EXPECT_THROW(min_weight_closure(ClosureInstance{2, {{0, 2}}, {1, 1}}), Error);
}

TEST(Closure, AgainstBruteForce) {
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<int> weight(-6, 6);
  for (int t = 0; t < 300; ++t) {
    ClosureInstance q;
    q.nodes = 1 + rng() % 12;
    for (std::size_t v = 0; v < q.nodes; ++v) q.weights.emplace_back(weight(rng), 1 + rng() % 3);
    const bool acyclic = t % 2 == 0;
    for (std::size_t u = 0; u < q.nodes; ++u)
      for (std::size_t v = 0; v < q.nodes; ++v)
        if (u != v && (!acyclic || u < v) && rng() % 5 == 0) q.arcs.emplace_back(u, v);
    const auto r = min_weight_closure(q);
    std::vector<bool> in(q.nodes, false);
    for (auto v : r.members) in[v] = true;
    EXPECT_TRUE(is_closed(q, in));
    const auto [members, w] = brute_closure(q);
    EXPECT_EQ(r.weight, w);
    EXPECT_EQ(r.members.size(), members.size());
    EXPECT_EQ(r.members, members);
  }
}
