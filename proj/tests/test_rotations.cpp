#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/random_instance.hpp"

using namespace stablematch;
using namespace testsupport;

namespace {

std::vector<std::string> names(const PreferenceInstance& inst, std::span<const EdgeIndex> edges) {
  std::vector<std::string> out;
  for (EdgeIndex e : edges) out.push_back(inst.edge_id(e));
  std::sort(out.begin(), out.end());
  return out;
}

struct GRight {
  PreferenceInstance inst = g_right();
  Matching m1 = ids(inst, {"b", "d", "a'", "c'"});
  Matching m2 = ids(inst, {"b", "d", "b'", "d'"});
  Matching m3 = ids(inst, {"a", "c", "b'", "d'"});
  Rotation c = rotation_from_ids(inst, {"a'", "b'", "c'", "d'"});
  Rotation d = rotation_from_ids(inst, {"b", "c", "d", "a"});
};

}  // namespace

TEST(ActiveGraph, AtM1) {
  GRight f;
  const auto g = active_graph(f.inst, f.m1);
  EXPECT_EQ(names(f.inst, g.active), (std::vector<std::string>{"b'", "c", "d'", "e"}));
  ASSERT_EQ(g.components.size(), 1u);
  EXPECT_TRUE(g.components[0].has_cycle);
  EXPECT_EQ(g.components[0].cycle, f.c.cycle());
}

TEST(ActiveGraph, AtM2) {
  GRight f;
  const auto g = active_graph(f.inst, f.m2);
  EXPECT_EQ(names(f.inst, g.active), (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(g.components.size(), 3u);
  ASSERT_EQ(g.rotations.size(), 1u);
  EXPECT_EQ(g.rotations[0], f.d);
}

TEST(ActiveGraph, AtM3IsForest) {
  GRight f;
  const auto g = active_graph(f.inst, f.m3);
  EXPECT_TRUE(g.admissible.empty());
  EXPECT_TRUE(g.is_forest());
}

TEST(ActiveGraph, RejectsUnstable) {
  GRight f;
  EXPECT_THROW(active_graph(f.inst, ids(f.inst, {"a", "c", "a'", "c'"})), Error);
}

TEST(ActiveGraph, Invariants) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const auto inst = t % 2 ? random_small_instance(rng) : random_rich_instance(rng, 2);
    for (const auto& m : all_stable_matchings(inst)) {
      const auto g = active_graph(inst, m);
      const auto mate = mate_edges(inst, m);
      std::set<VertexIndex> heads;
      for (EdgeIndex a : g.active) {
        const auto v = inst.i_end(a);
        EXPECT_TRUE(heads.insert(v).second);
        EXPECT_TRUE(inst.prefers(v, mate[v], a));
        EXPECT_TRUE(std::binary_search(g.admissible.begin(), g.admissible.end(), a));
        for (EdgeIndex b : g.admissible)
          if (inst.i_end(b) == v) EXPECT_FALSE(inst.prefers(v, b, a));
      }
      for (const auto& r : g.rotations) {
        EXPECT_GE(r.size(), 2u);
        std::set<VertexIndex> verts;
        for (std::size_t i = 0; i < r.size(); ++i) {
          EXPECT_EQ(inst.i_end(r.matching[i]), inst.i_end(r.active[i]));
          EXPECT_EQ(inst.j_end(r.active[i]), inst.j_end(r.matching[(i + 1) % r.size()]));
          verts.insert(inst.i_end(r.matching[i]));
          verts.insert(inst.j_end(r.matching[i]));
        }
        EXPECT_EQ(verts.size(), 2 * r.size());
      }
    }
  }
}

TEST(RotationsOf, Examples) {
  GRight f;
  EXPECT_EQ(rotations_of(f.inst, f.m1), std::vector<Rotation>{f.c});
  EXPECT_TRUE(rotations_of(f.inst, f.m3).empty());
  const auto k = k22();
  const auto rs = rotations_of(k, ids(k, {"e11", "e22"}));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(names(k, rs[0].matching), (std::vector<std::string>{"e11", "e22"}));
}

TEST(Eliminate, Examples) {
  GRight f;
  EXPECT_EQ(eliminate(f.inst, f.m1, f.c), f.m2);
  EXPECT_EQ(eliminate(f.inst, f.m2, f.d), f.m3);
  EXPECT_THROW(eliminate(f.inst, f.m1, f.d), Error);
  const auto k = k22();
  const auto lo = ids(k, {"e11", "e22"});
  EXPECT_EQ(eliminate(k, lo, rotations_of(k, lo)[0]), ids(k, {"e12", "e21"}));
}

TEST(Eliminate, OutputStableAndAbove) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 150; ++t) {
    const auto inst = t % 2 ? random_small_instance(rng) : random_rich_instance(rng, 2);
    const auto covered = covered_set(inst);
    for (const auto& m : all_stable_matchings(inst))
      for (const auto& r : rotations_of(inst, m)) {
        const auto next = eliminate(inst, m, r);
        EXPECT_TRUE(is_stable(inst, next));
        EXPECT_EQ(compare(inst, m, next), Relation::Less);
        EXPECT_EQ(covered_vertices(inst, next), covered);
      }
  }
}

TEST(Trace, Examples) {
  GRight f;
  const auto t = trace(f.inst);
  EXPECT_EQ(t.matchings, (std::vector<Matching>{f.m1, f.m2, f.m3}));
  EXPECT_EQ(t.rotations, (std::vector<Rotation>{f.c, f.d}));
  const auto left = trace(g_left());
  EXPECT_EQ(left.matchings.size(), 1u);
  EXPECT_TRUE(left.rotations.empty());
  EXPECT_EQ(trace(k22()).rotations.size(), 1u);
}

TEST(Trace, RanksIncreaseAndEndpoints) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 150; ++t) {
    const auto inst = random_small_instance(rng, 6);
    const auto tr = trace(inst);
    EXPECT_EQ(tr.matchings.front(), deferred_acceptance(inst, Side::I));
    EXPECT_EQ(tr.matchings.back(), deferred_acceptance(inst, Side::J));
    EXPECT_LT(tr.rotations.size(), std::max<std::size_t>(inst.num_edges(), 1));
    for (std::size_t i = 1; i < tr.matchings.size(); ++i)
      EXPECT_LT(matching_rank(inst, tr.matchings[i - 1]), matching_rank(inst, tr.matchings[i]));
  }
}

TEST(RotationSet, Examples) {
  GRight f;
  EXPECT_EQ(rotation_set(f.inst), (std::vector<Rotation>{f.c, f.d}));
  EXPECT_TRUE(rotation_set(g_left()).empty());
  EXPECT_EQ(rotation_set(k22()).size(), 1u);
}

TEST(RotationSet, TraceIndependentAndDisjoint) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 200; ++t) {
    const auto inst = random_small_instance(rng, 6);
    auto first = trace(inst, TraceChoice::CanonicalFirst).rotations;
    auto last = trace(inst, TraceChoice::CanonicalLast).rotations;
    std::sort(first.begin(), first.end());
    std::sort(last.begin(), last.end());
    EXPECT_EQ(first, last);
    EXPECT_LE(first.size(), inst.num_edges());
    std::vector<bool> used(inst.num_edges(), false);
    std::size_t total = 0;
    for (const auto& r : first) {
      total += 2 * r.size();
      for (EdgeIndex e : r.matching) {
        EXPECT_FALSE(used[e]);
        used[e] = true;
      }
    }
    EXPECT_LE(total, 2 * inst.num_edges());
  }
}

TEST(FixedEdges, Examples) {
  EXPECT_TRUE(fixed_edges(g_right()).empty());
  const auto left = g_left();
  EXPECT_EQ(names(left, fixed_edges(left)), (std::vector<std::string>{"b", "d"}));
  const auto both = disjoint_union({g_left(), k22()});
  EXPECT_EQ(names(both, fixed_edges(both)), (std::vector<std::string>{"k0.b", "k0.d"}));
}

TEST(UnionGraph, Examples) {
  const auto right = g_right();
  EXPECT_EQ(names(right, union_graph(right)),
            (std::vector<std::string>{"a", "a'", "b", "b'", "c", "c'", "d", "d'"}));
  const auto left = g_left();
  EXPECT_EQ(names(left, union_graph(left)), (std::vector<std::string>{"b", "d"}));
  EXPECT_EQ(union_graph(k22()).size(), 4u);
}

TEST(FixedAndUnion, AgainstOracle) {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 150; ++t) {
    const auto inst = t % 2 ? random_small_instance(rng) : random_rich_instance(rng, 2);
    const auto all = all_stable_matchings(inst);
    std::vector<EdgeIndex> every, some;
    for (EdgeIndex e = 0; e < inst.num_edges(); ++e) {
      const auto hits = std::count_if(all.begin(), all.end(), [&](const Matching& m) { return m.contains(e); });
      if (hits == static_cast<long>(all.size())) every.push_back(e);
      if (hits > 0) some.push_back(e);
    }
    EXPECT_EQ(fixed_edges(inst), every);
    EXPECT_EQ(union_graph(inst), some);
  }
}

TEST(MatchingRank, Examples) {
  GRight f;
  EXPECT_EQ(matching_rank(f.inst, f.m1), 4u);
  EXPECT_EQ(matching_rank(f.inst, f.m3), 9u);
  EXPECT_EQ(matching_rank(f.inst, Matching{}), 0u);
}

TEST(IsUnique, Examples) {
  EXPECT_TRUE(is_unique(g_left()));
  EXPECT_FALSE(is_unique(g_right()));
  EXPECT_TRUE(is_unique(parse_instance("side I\nside J\n")));
}

TEST(IsUnique, AgainstOracle) {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 150; ++t) {
    const auto inst = t % 2 ? random_small_instance(rng) : random_rich_instance(rng, 2);
    EXPECT_EQ(is_unique(inst), all_stable_matchings(inst).size() == 1);
  }
}

TEST(RotationsBetween, Examples) {
  GRight f;
  EXPECT_EQ(rotations_between(f.inst, f.m1, f.m3), (std::vector<Rotation>{f.c, f.d}));
  EXPECT_TRUE(rotations_between(f.inst, f.m2, f.m2).empty());
  EXPECT_EQ(rotations_between(f.inst, f.m1, f.m2), std::vector<Rotation>{f.c});
  EXPECT_THROW(rotations_between(f.inst, f.m3, f.m1), Error);
}

TEST(TreeComponents, EdgesStayOrLower) {
  // A matching edge in a tree component of the active graph is kept by every
  // stable L or lies on a lowering cycle of M xor L.
  std::mt19937_64 rng(47);
  for (int t = 0; t < 150; ++t) {
    const auto inst = t % 2 ? random_small_instance(rng) : random_rich_instance(rng, 2);
    const auto all = all_stable_matchings(inst);
    for (const auto& m : all) {
      const auto g = active_graph(inst, m);
      for (const auto& comp : g.components) {
        if (comp.has_cycle) continue;
        for (EdgeIndex e : comp.edges) {
          if (!m.contains(e)) continue;
          for (const auto& l : all) {
            if (l.contains(e)) continue;
            bool lowering = false;
            for (const auto& c : diff_cycles(inst, m, l))
              if (std::find(c.edges.begin(), c.edges.end(), e) != c.edges.end()) lowering = !c.raising;
            EXPECT_TRUE(lowering);
          }
        }
      }
    }
  }
}
