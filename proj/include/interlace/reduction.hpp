#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace interlace {

enum class ReductionKind { Pendant, IdenticalTwin, FraternalTwin };

std::string_view to_string(ReductionKind kind);

class ReductionError : public GraphError {
 public:
  using GraphError::GraphError;
};

struct VertexWeights {
  Poly alpha;
  Poly beta;
  bool operator==(const VertexWeights&) const = default;
};

// One pendant or twin reduction: `removed` vertices disappear and `survivor`
// takes the new weights.
struct ReductionStep {
  ReductionKind kind;
  std::string survivor;
  std::vector<std::string> removed;
  Poly alpha;
  Poly beta;
};

// Unlooped non-adjacent or looped adjacent, equal neighbors outside the pair.
bool identical_twins(const WeightedGraph& g, WeightedGraph::Index a, WeightedGraph::Index b);
// Unlooped adjacent or looped non-adjacent, equal neighbors outside the pair.
bool fraternal_twins(const WeightedGraph& g, WeightedGraph::Index a, WeightedGraph::Index b);

// Merged weights of a twin class b0..bk (k-fold formulas, single pass).
VertexWeights identical_twin_weights(std::span<const VertexWeights> twins);
VertexWeights fraternal_twin_weights(std::span<const VertexWeights> twins);
// New weights of `a` after removing an unlooped pendant `b` attached to it.
VertexWeights pendant_weights(const VertexWeights& a, const VertexWeights& b);

// The first listed vertex survives. Throws ReductionError naming the first
// offending pair when the list is not pairwise twins of the requested kind.
WeightedGraph identical_twin_reduce(const WeightedGraph& g, std::span<const std::string> twins);
WeightedGraph fraternal_twin_reduce(const WeightedGraph& g, std::span<const std::string> twins);
WeightedGraph pendant_reduce(const WeightedGraph& g, std::string_view a, std::string_view b);

struct ReductionScan {
  bool allow_fraternal = true;
  // Kinds are tried in this order.
  std::array<ReductionKind, 3> kind_order{ReductionKind::Pendant, ReductionKind::IdenticalTwin,
                                          ReductionKind::FraternalTwin};
  // Vertex visiting order (a permutation of indices); empty means vertex-list order.
  std::vector<WeightedGraph::Index> vertex_order;
};

std::optional<ReductionStep> find_reduction(const WeightedGraph& g, const ReductionScan& scan = {});
WeightedGraph apply_reduction(const WeightedGraph& g, const ReductionStep& step);

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  WeightedGraph terminal;
  bool reduced_to_edgeless() const { return !terminal.has_non_loop_edges(); }
  // One line per step: kind, removed vertices, survivor, new weights.
  std::string to_text() const;
};

// Applies find_reduction until none is left. Vertex-count bookkeeping and the
// search are polynomial in |V|.
ReductionTrace reduce_fully(const WeightedGraph& g, const ReductionScan& scan = {});

// Product formula for graphs without non-loop edges; throws GraphError otherwise.
Poly edgeless_closure(const WeightedGraph& g);

// q(G) from a trace whose terminal graph is edgeless; nullopt otherwise.
std::optional<Poly> closed_form_q(const ReductionTrace& trace);

}  // namespace interlace
