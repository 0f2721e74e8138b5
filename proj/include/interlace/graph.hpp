#pragma once

#include "interlace/poly.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace interlace {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RankNullity {
  std::size_t rank = 0;
  std::size_t nullity = 0;
  bool operator==(const RankNullity&) const = default;
};

// A looped simple graph with per-vertex weights alpha ("includes") and beta
// ("excludes"). Vertices are identified by label; indices follow insertion
// order and are compacted on deletion. Loops are kept apart from adjacency.
class WeightedGraph {
 public:
  using Index = std::size_t;

  WeightedGraph() = default;

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_.at(i); }
  std::optional<Index> find(std::string_view label) const;
  Index index_of(std::string_view label) const;  // throws GraphError
  bool contains(std::string_view label) const { return find(label).has_value(); }

  Index add_vertex(std::string label, bool looped = false, Poly alpha = 1, Poly beta = 1);
  void add_edge(std::string_view a, std::string_view b);

  bool looped(Index i) const { return loops_[i]; }
  bool adjacent(Index i, Index j) const {
    return (adj_[i][j / 64] >> (j % 64)) & 1U;
  }
  void set_loop(Index i, bool on) { loops_[i] = on; }
  void toggle_loop(Index i) { loops_[i] = !loops_[i]; }
  void set_edge(Index i, Index j, bool on);
  void toggle_edge(Index i, Index j);

  std::vector<Index> neighbors(Index i) const;
  std::size_t degree(Index i) const;
  // Equal neighborhoods once {i, j} are ignored.
  bool same_outside_neighbors(Index i, Index j) const;

  const Poly& alpha(Index i) const { return alpha_[i]; }
  const Poly& beta(Index i) const { return beta_[i]; }
  void set_weights(Index i, Poly alpha, Poly beta);

  bool has_non_loop_edges() const;
  bool has_loops() const;
  bool is_unweighted() const;
  std::size_t edge_count() const;

  // Adjacency bits of row i restricted to the first 64 vertices; the loop
  // flag is placed on the diagonal.
  std::uint64_t row64(Index i) const;
  const std::vector<std::uint64_t>& adjacency_row(Index i) const { return adj_[i]; }

  bool operator==(const WeightedGraph& o) const;

 private:
  std::size_t words() const { return (labels_.size() + 63) / 64; }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> index_;
  std::vector<std::vector<std::uint64_t>> adj_;
  std::vector<bool> loops_;
  std::vector<Poly> alpha_;
  std::vector<Poly> beta_;
};

// GF(2) rank/nullity of the adjacency matrix of G[S], loops on the diagonal.
RankNullity rank_nullity(const WeightedGraph& g, std::span<const std::string> subset);
RankNullity rank_nullity_at(const WeightedGraph& g, std::span<const WeightedGraph::Index> subset);
// Subset given as a bit mask over the first 64 vertices.
RankNullity rank_nullity_mask(const WeightedGraph& g, std::uint64_t subset);

WeightedGraph local_complement(const WeightedGraph& g, std::string_view a);
WeightedGraph local_complement_at(const WeightedGraph& g, WeightedGraph::Index a);
WeightedGraph pivot(const WeightedGraph& g, std::string_view a, std::string_view b);
WeightedGraph pivot_at(const WeightedGraph& g, WeightedGraph::Index a, WeightedGraph::Index b);
WeightedGraph complement(const WeightedGraph& g);
WeightedGraph join(const WeightedGraph& g1, const WeightedGraph& g2);
WeightedGraph disjoint_union(const WeightedGraph& g1, const WeightedGraph& g2);
WeightedGraph delete_vertex(const WeightedGraph& g, std::string_view a);
WeightedGraph delete_vertices_at(const WeightedGraph& g, std::span<const WeightedGraph::Index> drop);
WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const std::string> subset);
WeightedGraph induced_subgraph_at(const WeightedGraph& g, std::span<const WeightedGraph::Index> keep);
WeightedGraph unweighted(const WeightedGraph& g);
WeightedGraph with_weights(const WeightedGraph& g, std::string_view a, Poly alpha, Poly beta);
// Same graph with vertex `from` relabelled `to` (position unchanged).
WeightedGraph rename_vertex(const WeightedGraph& g, std::string_view from, std::string to);

// Vertex index lists of connected components, each sorted, ordered by their
// smallest member.
std::vector<std::vector<WeightedGraph::Index>> connected_components(const WeightedGraph& g);
bool is_simple(const WeightedGraph& g);

namespace fault {
// Test fixture for the self-test harness: while an instance is alive, pivot
// returns its input unchanged.
class ScopedPivotFault {
 public:
  ScopedPivotFault();
  ~ScopedPivotFault();
  ScopedPivotFault(const ScopedPivotFault&) = delete;
  ScopedPivotFault& operator=(const ScopedPivotFault&) = delete;
};
}  // namespace fault

// Convenience builders used by tests and examples.
WeightedGraph edgeless_graph(std::size_t n, std::string_view prefix = "v");
WeightedGraph complete_graph(std::size_t n, std::string_view prefix = "v");
WeightedGraph path_graph(std::size_t n, std::string_view prefix = "v");
WeightedGraph cycle_graph(std::size_t n, std::string_view prefix = "v");

}  // namespace interlace
