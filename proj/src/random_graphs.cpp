#include "interlace/random_graphs.hpp"

#include <algorithm>
#include <string>

namespace interlace {

namespace {

std::string vertex_name(std::size_t i) { return "v" + std::to_string(i); }

std::size_t uniform(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

void maybe_weight(Rng& rng, WeightedGraph& g, std::size_t v, bool weighted, bool symbolic) {
  if (!weighted) return;
  Poly a = random_weight(rng, v, true, symbolic);
  Poly b = random_weight(rng, v, false, symbolic);
  g.set_weights(v, std::move(a), std::move(b));
}

}  // namespace

Poly random_weight(Rng& rng, std::size_t vertex, bool is_alpha, bool symbolic) {
  if (coin(rng, 0.5)) return 1;
  switch (uniform(rng, symbolic ? 7 : 6)) {
    case 0:
      return 0;
    case 1:
      return 2;
    case 2:
      return Poly::x();
    case 3:
      return Poly::y();
    case 4:
      return x_minus_1();
    case 5:
      return y_minus_1();
    default:
      return Poly::variable((is_alpha ? "alpha" : "beta") + std::to_string(vertex));
  }
}

WeightedGraph random_graph(Rng& rng, std::size_t n, const RandomGraphOptions& opts) {
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    g.add_vertex(vertex_name(i), coin(rng, opts.loop_p));
    maybe_weight(rng, g, i, opts.weighted, opts.symbolic);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coin(rng, opts.edge_p)) g.set_edge(i, j, true);
    }
  }
  return g;
}

WeightedGraph random_tree(Rng& rng, std::size_t n, bool weighted, bool symbolic) {
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    g.add_vertex(vertex_name(i));
    maybe_weight(rng, g, i, weighted, symbolic);
    if (i > 0) g.set_edge(uniform(rng, i), i, true);
  }
  return g;
}

OrderedRootedTree random_ordered_tree(Rng& rng, std::size_t n, bool weighted, bool symbolic) {
  WeightedGraph g = random_tree(rng, n, weighted, symbolic);
  const std::string root = vertex_name(uniform(rng, n));
  OrderedRootedTree plain(g, root);
  auto order = plain.child_order();
  for (auto& [parent, kids] : order) std::shuffle(kids.begin(), kids.end(), rng);
  return OrderedRootedTree(std::move(g), root, std::move(order));
}

WeightedGraph random_pendant_twin_graph(Rng& rng, std::size_t n, const RandomGraphOptions& opts) {
  WeightedGraph g;
  if (n == 0) return g;
  g.add_vertex(vertex_name(0), coin(rng, opts.loop_p));
  maybe_weight(rng, g, 0, opts.weighted, opts.symbolic);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t u = uniform(rng, i);
    const std::size_t kind = uniform(rng, 3);
    const bool looped = kind != 0 && g.looped(u);
    const auto v = g.add_vertex(vertex_name(i), looped);
    maybe_weight(rng, g, v, opts.weighted, opts.symbolic);
    if (kind == 0) {
      g.set_edge(u, v, true);  // pendant
      continue;
    }
    for (auto w : g.neighbors(u)) {
      if (w != v) g.set_edge(v, w, true);
    }
    // Identical twins: adjacent iff looped; fraternal twins: the opposite.
    const bool adjacent = (kind == 1) == looped;
    if (adjacent) g.set_edge(u, v, true);
  }
  return g;
}

WeightedGraph graph_from_code(std::size_t n, std::uint64_t code) {
  if (n * (n + 1) / 2 >= 64) throw GraphError("graph code too wide");
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(vertex_name(i), (code >> i) & 1U);
  std::size_t bit = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if ((code >> bit) & 1U) g.set_edge(i, j, true);
    }
  }
  return g;
}

std::uint64_t graph_code_count(std::size_t n) { return std::uint64_t{1} << (n * (n + 1) / 2); }

}  // namespace interlace
