#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"
#include "interlace/reduction.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace interlace {

enum class NodeKind {
  LoopBranch,        // looped a: beta(a) q(G-a) + alpha(a)(x-1) q(G^a - a)
  BinaryPivot,       // loopless neighbors a, b: beta(a) q(G-a) + alpha(a) q((G^ab - b)')
  TernaryPivot,      // three-term pivot recursion
  IsolatedLooped,    // (alpha(a)(x-1) + beta(a)) q(G-a)
  IsolatedUnlooped,  // (alpha(a)(y-1) + beta(a)) q(G-a)
  EdgelessClosure,   // closed product, no children
  ReductionStep,     // pendant / twin reduction, one child, coefficient 1
  EmptyLeaf,         // q(empty) = 1
};

std::string_view to_string(NodeKind kind);

struct ComputationNode {
  NodeKind kind = NodeKind::EmptyLeaf;
  std::optional<ReductionKind> reduction;
  std::vector<std::string> vertices;
  // One coefficient per child slot. A slot whose coefficient is zero may have
  // been pruned, in which case its child pointer is null.
  std::vector<Poly> coefficients;
  std::vector<std::unique_ptr<ComputationNode>> children;
  Poly closure;  // EdgelessClosure only
  std::size_t graph_size = 0;
  bool graph_connected = false;
};

class ComputationTree {
 public:
  explicit ComputationTree(std::unique_ptr<ComputationNode> root) : root_(std::move(root)) {}
  const ComputationNode& root() const { return *root_; }

  // Bottom-up re-evaluation: leaf = 1, closure = its product, internal node =
  // sum of coefficient_i * child_i.
  Poly evaluate() const;
  // Indented text trace, one node per line.
  std::string to_text() const;

 private:
  std::unique_ptr<ComputationNode> root_;
};

struct TreeStats {
  std::size_t leaves = 0;
  std::size_t active_nodes = 0;
  std::size_t nodes = 0;
  // Leaves of the portion made of nodes whose graph is connected and nonempty.
  std::size_t connected_leaves = 0;
  std::map<NodeKind, std::size_t> by_kind;
};

TreeStats tree_stats(const ComputationTree& tree);

class Strategy {
 public:
  enum class Kind { FirstVertex, Tree, ReduceFirst };

  static Strategy first_vertex() { return Strategy(Kind::FirstVertex); }
  static Strategy reduce_first() { return Strategy(Kind::ReduceFirst); }
  // child_order maps a parent label to its ordered children; parents missing
  // from the map order their children by vertex-list order.
  static Strategy tree(std::string root, std::map<std::string, std::vector<std::string>> child_order = {});

  Kind kind() const { return kind_; }
  const std::string& root() const { return root_; }
  const std::map<std::string, std::vector<std::string>>& child_order() const { return child_order_; }

 private:
  explicit Strategy(Kind k) : kind_(k) {}
  Kind kind_;
  std::string root_;
  std::map<std::string, std::vector<std::string>> child_order_;
};

std::string_view to_string(Strategy::Kind kind);

struct RecursionOptions {
  bool ternary = false;
  // Leaf-bound setting: closed products only on loopless graphs (isolated
  // looped vertices go through the loop branch), no fraternal reductions and
  // no zero-coefficient pruning.
  bool leaf_bound_mode = false;
  bool prune_zero = true;
  // Close any graph without non-loop edges with the product formula.
  bool edgeless_closure = false;
  bool record_tree = false;
};

struct RecursionResult {
  Poly value;
  std::optional<ComputationTree> tree;
};

class StrategyError : public GraphError {
 public:
  using GraphError::GraphError;
};

RecursionResult q_recursive(const WeightedGraph& g, const Strategy& strategy = Strategy::first_vertex(),
                            const RecursionOptions& options = {});

// alpha'(a) = r1 alpha(a), beta'(a) = r1 beta(a) + r2.
WeightedGraph reweight_linear(const WeightedGraph& g, std::string_view a, const Poly& r1, const Poly& r2);

// Builds (G^ab)' with swapped, (x-1)^2-scaled weights on a and b and checks
// (x-1)^2 q(G) == q((G^ab)') by subset expansion. a, b must be unlooped
// neighbors.
bool pivot_reweight_identity_check(const WeightedGraph& g, std::string_view a, std::string_view b);

struct LeafBoundReport {
  Strategy::Kind strategy = Strategy::Kind::FirstVertex;
  bool ternary = false;
  std::size_t leaves = 0;
  std::size_t connected_leaves = 0;
  std::size_t active_nodes = 0;
  Integer epsilon;
  std::optional<Integer> gamma;  // simple graphs only
  bool satisfied = false;        // 2 * leaves >= epsilon (and >= gamma when simple)
};

LeafBoundReport check_leaf_bound(const WeightedGraph& g, const Strategy& strategy, bool ternary = false);
// FirstVertex and ReduceFirst, binary and ternary.
std::vector<LeafBoundReport> check_leaf_bound(const WeightedGraph& g);

}  // namespace interlace
