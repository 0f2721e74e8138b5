#include "interlace/random_graphs.hpp"
#include "interlace/reduction.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

using namespace interlace;

namespace {

std::vector<VertexWeights> random_class(Rng& rng, std::size_t k) {
  std::vector<VertexWeights> w;
  for (std::size_t i = 0; i < k; ++i) w.push_back({random_weight(rng, i, true), random_weight(rng, i, false)});
  return w;
}

std::vector<std::pair<Poly, Poly>> as_pairs(const std::vector<VertexWeights>& w) {
  std::vector<std::pair<Poly, Poly>> out;
  for (const auto& v : w) out.emplace_back(v.alpha, v.beta);
  return out;
}

// Hub h joined to every twin, twins unlooped and pairwise non-adjacent
// (identical) or pairwise adjacent (fraternal), plus a pendant on h.
WeightedGraph twin_class_graph(const std::vector<VertexWeights>& w, bool fraternal) {
  WeightedGraph g;
  g.add_vertex("h");
  g.add_vertex("p");
  g.add_edge("h", "p");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string t = "t" + std::to_string(i);
    g.add_vertex(t, false, w[i].alpha, w[i].beta);
    g.add_edge("h", t);
    if (fraternal) {
      for (std::size_t j = 0; j < i; ++j) g.add_edge("t" + std::to_string(j), t);
    }
  }
  return g;
}

std::vector<std::string> twin_labels(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("t" + std::to_string(i));
  return out;
}

}  // namespace

TEST(TwinRelations, Definitions) {
  // Unlooped, non-adjacent, same neighbor: identical.
  WeightedGraph g = path_graph(3);
  EXPECT_TRUE(identical_twins(g, 0, 2));
  EXPECT_FALSE(fraternal_twins(g, 0, 2));
  // Unlooped, adjacent, same outside neighbor: fraternal.
  WeightedGraph tri = complete_graph(3);
  EXPECT_TRUE(fraternal_twins(tri, 0, 1));
  EXPECT_FALSE(identical_twins(tri, 0, 1));
  // Looped and adjacent: identical.
  tri.set_loop(0, true);
  tri.set_loop(1, true);
  EXPECT_TRUE(identical_twins(tri, 0, 1));
  // Loop status must agree.
  tri.set_loop(1, false);
  EXPECT_FALSE(identical_twins(tri, 0, 1));
  EXPECT_FALSE(fraternal_twins(tri, 0, 1));
}

TEST(TwinWeights, MatchSubsetEnumeration) {
  Rng rng(41);
  for (std::size_t k = 2; k <= 6; ++k) {
    for (int rep = 0; rep < 15; ++rep) {
      const auto w = random_class(rng, k);
      const auto [ia, ib] = oracle::twin_weights_by_subsets(as_pairs(w), true);
      const auto id = identical_twin_weights(w);
      EXPECT_EQ(id.alpha, ia);
      EXPECT_EQ(id.beta, ib);
      const auto [fa, fb] = oracle::twin_weights_by_subsets(as_pairs(w), false);
      const auto fr = fraternal_twin_weights(w);
      EXPECT_EQ(fr.alpha, fa);
      EXPECT_EQ(fr.beta, fb);
    }
  }
}

TEST(TwinWeights, KFoldEqualsIteratedPairs) {
  Rng rng(42);
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto w = random_class(rng, k);
    VertexWeights id = w[0], fr = w[0];
    for (std::size_t i = 1; i < k; ++i) {
      const std::vector<VertexWeights> pi{id, w[i]}, pf{fr, w[i]};
      id = identical_twin_weights(pi);
      fr = fraternal_twin_weights(pf);
    }
    EXPECT_EQ(identical_twin_weights(w), id);
    EXPECT_EQ(fraternal_twin_weights(w), fr);
  }
}

TEST(TwinReduction, PreservesQ) {
  Rng rng(43);
  for (std::size_t k = 2; k <= 5; ++k) {
    for (bool fraternal : {false, true}) {
      const auto w = random_class(rng, k);
      const WeightedGraph g = twin_class_graph(w, fraternal);
      const auto labels = twin_labels(k);
      const WeightedGraph r = fraternal ? fraternal_twin_reduce(g, labels) : identical_twin_reduce(g, labels);
      EXPECT_EQ(r.size(), g.size() - k + 1);
      EXPECT_TRUE(r.contains("t0"));
      EXPECT_EQ(oracle::q(r), oracle::q(g)) << k << (fraternal ? " fraternal" : " identical");
    }
  }
}

TEST(TwinReduction, RejectsNonTwinsNamingThePair) {
  // v0 and v2 share v1 but v2 also sees v3.
  const WeightedGraph g = path_graph(4);
  const std::vector<std::string> bad{"v0", "v2", "v3"};
  try {
    identical_twin_reduce(g, bad);
    FAIL();
  } catch (const ReductionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("v0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("v2"), std::string::npos) << msg;
  }
  const std::vector<std::string> pair{"v0", "v2"};
  EXPECT_THROW(fraternal_twin_reduce(g, pair), ReductionError);
}

TEST(PendantReduction, PreservesQ) {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    WeightedGraph g = random_graph(rng, 1 + i % 5);
    g.add_vertex("p", false, random_weight(rng, 9, true), random_weight(rng, 9, false));
    g.add_edge("p", "v0");
    const WeightedGraph r = pendant_reduce(g, "v0", "p");
    EXPECT_FALSE(r.contains("p"));
    EXPECT_EQ(oracle::q(r), oracle::q(g));
  }
}

TEST(PendantReduction, RejectsNonPendants) {
  WeightedGraph g = path_graph(3);
  EXPECT_THROW(pendant_reduce(g, "v0", "v1"), ReductionError);  // v1 has degree 2
  g.set_loop(2, true);
  EXPECT_THROW(pendant_reduce(g, "v1", "v2"), ReductionError);  // looped pendant
  EXPECT_THROW(pendant_reduce(g, "v0", "v2"), ReductionError);  // not adjacent
}

TEST(ReduceFully, PendantTwinGraphsCloseUp) {
  Rng rng(45);
  for (int i = 0; i < 80; ++i) {
    const WeightedGraph g = random_pendant_twin_graph(rng, 2 + i % 8);
    const ReductionTrace t = reduce_fully(g);
    EXPECT_TRUE(t.reduced_to_edgeless()) << t.to_text();
    ASSERT_TRUE(closed_form_q(t).has_value());
    EXPECT_EQ(*closed_form_q(t), oracle::q(g));
  }
}

TEST(ReduceFully, OrderDoesNotChangeTheResult) {
  Rng rng(46);
  for (int i = 0; i < 30; ++i) {
    const WeightedGraph g = random_pendant_twin_graph(rng, 3 + i % 6);
    ReductionScan scan;
    scan.kind_order = {ReductionKind::FraternalTwin, ReductionKind::IdenticalTwin, ReductionKind::Pendant};
    for (std::size_t v = g.size(); v-- > 0;) scan.vertex_order.push_back(v);
    const auto a = closed_form_q(reduce_fully(g));
    const auto b = closed_form_q(reduce_fully(g, scan));
    ASSERT_TRUE(a && b);
    EXPECT_EQ(*a, *b);
  }
}

TEST(ReduceFully, StopsOnIrreducibleGraphs) {
  // C5 has no pendants and no twins.
  const ReductionTrace t = reduce_fully(cycle_graph(5));
  EXPECT_TRUE(t.steps.empty());
  EXPECT_FALSE(t.reduced_to_edgeless());
  EXPECT_FALSE(closed_form_q(t).has_value());
}

TEST(EdgelessClosure, ProductOfVertexFactors) {
  WeightedGraph g = edgeless_graph(2);
  g.set_loop(0, true);
  g.set_weights(1, Poly::variable("s"), Poly(2));
  EXPECT_EQ(edgeless_closure(g), parse_poly("x * (s*(y-1) + 2)"));
  EXPECT_EQ(edgeless_closure(g), oracle::q(g));
  EXPECT_THROW(edgeless_closure(path_graph(2)), GraphError);
}
