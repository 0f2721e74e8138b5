#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"
#include "interlace/trees.hpp"

#include <cstdint>
#include <random>

namespace interlace {

using Rng = std::mt19937_64;

struct RandomGraphOptions {
  double edge_p = 0.5;
  double loop_p = 0.3;
  bool weighted = true;
  // Allow the indeterminates alpha<i>, beta<i> among the weights.
  bool symbolic = true;
};

// A weight drawn from {0, 1, 2, x, y, x-1, y-1, alpha<i> or beta<i>}; half of
// the draws are 1.
Poly random_weight(Rng& rng, std::size_t vertex, bool is_alpha, bool symbolic = true);

// Erdos-Renyi style graph on v0..v{n-1}.
WeightedGraph random_graph(Rng& rng, std::size_t n, const RandomGraphOptions& opts = {});

// Each vertex i > 0 attaches to a uniformly chosen earlier vertex.
WeightedGraph random_tree(Rng& rng, std::size_t n, bool weighted = true, bool symbolic = true);

// Random tree with a random root and random sibling orders.
OrderedRootedTree random_ordered_tree(Rng& rng, std::size_t n, bool weighted = true, bool symbolic = true);

// Grown from one vertex by repeatedly adding a pendant, an identical twin or a
// fraternal twin of an existing vertex; always reducible to a single vertex.
WeightedGraph random_pendant_twin_graph(Rng& rng, std::size_t n, const RandomGraphOptions& opts = {});

// Every looped graph on v0..v{n-1}, unweighted: 2^(n(n+1)/2) graphs, indexed
// by a bit code (loops in the low n bits, then the pairs in lexicographic
// order).
WeightedGraph graph_from_code(std::size_t n, std::uint64_t code);
std::uint64_t graph_code_count(std::size_t n);

}  // namespace interlace
