#include "interlace/gf2.hpp"
#include "interlace/graph.hpp"
#include "interlace/random_graphs.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

using namespace interlace;

TEST(Graph, AddAndQuery) {
  WeightedGraph g;
  g.add_vertex("a", true);
  g.add_vertex("b");
  g.add_edge("a", "b");
  EXPECT_TRUE(g.looped(0));
  EXPECT_FALSE(g.looped(1));
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_EQ(g.degree(0), 1U);  // loops do not count
  EXPECT_EQ(g.edge_count(), 1U);
  EXPECT_THROW(g.add_vertex("a"), GraphError);
  EXPECT_THROW(g.add_edge("a", "a"), GraphError);
  EXPECT_THROW(g.add_edge("a", "zz"), GraphError);
}

TEST(Graph, DeletionKeepsOrderAndCompactsIndices) {
  WeightedGraph g = path_graph(4);
  WeightedGraph h = delete_vertex(g, "v1");
  ASSERT_EQ(h.size(), 3U);
  EXPECT_EQ(h.labels(), (std::vector<std::string>{"v0", "v2", "v3"}));
  EXPECT_TRUE(h.adjacent(h.index_of("v2"), h.index_of("v3")));
  EXPECT_EQ(h.edge_count(), 1U);
}

TEST(Graph, RankOfSmallMatrices) {
  // Single looped vertex: rank 1; single unlooped: nullity 1.
  WeightedGraph g;
  g.add_vertex("a", true);
  g.add_vertex("b");
  EXPECT_EQ(rank_nullity_mask(g, 0b01), (RankNullity{1, 0}));
  EXPECT_EQ(rank_nullity_mask(g, 0b10), (RankNullity{0, 1}));
  // Unlooped edge has matrix [[0,1],[1,0]]: rank 2.
  EXPECT_EQ(rank_nullity_mask(complete_graph(2), 0b11), (RankNullity{2, 0}));
  // Two looped adjacent vertices: all-ones 2x2, rank 1.
  WeightedGraph k = complete_graph(2);
  k.set_loop(0, true);
  k.set_loop(1, true);
  EXPECT_EQ(rank_nullity_mask(k, 0b11), (RankNullity{1, 1}));
  EXPECT_EQ(rank_nullity_mask(g, 0), (RankNullity{0, 0}));
}

TEST(Graph, RankAgreesWithXorBasisOracle) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const WeightedGraph g = random_graph(rng, 1 + i % 12, {0.5, 0.4, false, false});
    std::vector<std::size_t> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    const std::size_t expect = oracle::xor_basis_rank(oracle::induced_matrix(g, all));
    EXPECT_EQ(rank_nullity_at(g, all).rank, expect);
    EXPECT_EQ(rank_nullity_mask(g, (std::uint64_t{1} << g.size()) - 1).rank, expect);
  }
}

TEST(Graph, MultiWordRankAgreesWithOracle) {
  Rng rng(12);
  for (int i = 0; i < 10; ++i) {
    const WeightedGraph g = random_graph(rng, 70 + i * 3, {0.3, 0.2, false, false});
    std::vector<std::size_t> all(g.size());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(rank_nullity_at(g, all).rank, oracle::xor_basis_rank(oracle::induced_matrix(g, all)));
  }
}

TEST(Graph, LocalComplementTogglesNeighborhoodIncludingLoops) {
  // Star with centre c and leaves p, q: local complement at c adds p-q and
  // loops on p and q.
  WeightedGraph g;
  g.add_vertex("c");
  g.add_vertex("p");
  g.add_vertex("q");
  g.add_edge("c", "p");
  g.add_edge("c", "q");
  const WeightedGraph h = local_complement(g, "c");
  EXPECT_TRUE(h.adjacent(1, 2));
  EXPECT_TRUE(h.looped(1));
  EXPECT_TRUE(h.looped(2));
  EXPECT_FALSE(h.looped(0));
  EXPECT_EQ(local_complement(h, "c"), g);
}

TEST(Graph, PivotOnPathOfFour) {
  // Path u-a-b-w: pivot on ab toggles the u-w pair (u only in N(a), w only in N(b)).
  WeightedGraph g = path_graph(4);
  const WeightedGraph h = pivot(g, "v1", "v2");
  EXPECT_TRUE(h.adjacent(0, 3));
  EXPECT_TRUE(h.adjacent(0, 1));
  EXPECT_TRUE(h.adjacent(2, 3));
  EXPECT_FALSE(h.has_loops());
  EXPECT_EQ(pivot(h, "v1", "v2"), g);
}

TEST(Graph, PivotLeavesCommonNeighborPairsAlone) {
  // u and w both adjacent to a and b: the pair u-w is not toggled, but pairs
  // between a common neighbor and a private one are.
  WeightedGraph g;
  for (const char* v : {"a", "b", "u", "w", "p"}) g.add_vertex(v);
  for (auto [s, t] : {std::pair{"a", "b"}, {"a", "u"}, {"b", "u"}, {"a", "w"}, {"b", "w"}, {"a", "p"}}) {
    g.add_edge(s, t);
  }
  const WeightedGraph h = pivot(g, "a", "b");
  EXPECT_FALSE(h.adjacent(h.index_of("u"), h.index_of("w")));
  EXPECT_TRUE(h.adjacent(h.index_of("p"), h.index_of("u")));
  EXPECT_TRUE(h.adjacent(h.index_of("p"), h.index_of("w")));
}

TEST(Graph, PivotEqualsTripleLocalComplementOnSimpleGraphs) {
  // Away from {a, b}, the non-loop edges of ((G^a)^b)^a match the pivot.
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    WeightedGraph g = random_graph(rng, 6, {0.5, 0.0, false, false});
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        if (!g.adjacent(a, b)) continue;
        const WeightedGraph p = pivot_at(g, a, b);
        const WeightedGraph t = local_complement_at(local_complement_at(local_complement_at(g, a), b), a);
        for (std::size_t u = 0; u < g.size(); ++u) {
          for (std::size_t w = u + 1; w < g.size(); ++w) {
            if (u == a || u == b || w == a || w == b) continue;
            EXPECT_EQ(p.adjacent(u, w), t.adjacent(u, w));
          }
        }
      }
    }
  }
}

TEST(Graph, ComplementJoinUnion) {
  WeightedGraph e = edgeless_graph(2);
  const WeightedGraph c = complement(e);
  EXPECT_TRUE(c.adjacent(0, 1));
  EXPECT_TRUE(c.looped(0) && c.looped(1));
  const WeightedGraph j = join(edgeless_graph(2, "a"), edgeless_graph(1, "b"));
  EXPECT_EQ(j.edge_count(), 2U);
  const WeightedGraph u = disjoint_union(edgeless_graph(2, "a"), path_graph(2, "b"));
  EXPECT_EQ(u.edge_count(), 1U);
  EXPECT_EQ(connected_components(u).size(), 3U);
  EXPECT_THROW(disjoint_union(edgeless_graph(1), edgeless_graph(1)), GraphError);
}

TEST(Graph, Builders) {
  EXPECT_EQ(complete_graph(5).edge_count(), 10U);
  EXPECT_EQ(cycle_graph(5).edge_count(), 5U);
  EXPECT_EQ(path_graph(5).edge_count(), 4U);
  EXPECT_EQ(edgeless_graph(5).edge_count(), 0U);
  EXPECT_TRUE(is_simple(cycle_graph(4)));
}

TEST(Graph, RenameKeepsStructure) {
  WeightedGraph g = path_graph(3);
  g.set_loop(1, true);
  g.set_weights(1, Poly::x(), 2);
  const WeightedGraph h = rename_vertex(g, "v1", "mid");
  EXPECT_EQ(h.label(1), "mid");
  EXPECT_TRUE(h.looped(1));
  EXPECT_EQ(h.alpha(1), Poly::x());
  EXPECT_EQ(h.edge_count(), 2U);
  EXPECT_THROW(rename_vertex(g, "v1", "v2"), GraphError);
}

TEST(Graph, ExhaustiveCodesCoverAllMatrices) {
  EXPECT_EQ(graph_code_count(4), 1024U);
  std::set<std::vector<bool>> seen;
  for (std::uint64_t c = 0; c < graph_code_count(3); ++c) {
    const WeightedGraph g = graph_from_code(3, c);
    std::vector<bool> bits;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) bits.push_back(i == j ? g.looped(i) : g.adjacent(i, j));
    }
    seen.insert(bits);
  }
  EXPECT_EQ(seen.size(), 64U);
}
