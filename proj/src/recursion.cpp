#include "interlace/recursion.hpp"

#include "interlace/expansion.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace interlace {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::LoopBranch:
      return "LoopBranch";
    case NodeKind::BinaryPivot:
      return "BinaryPivot";
    case NodeKind::TernaryPivot:
      return "TernaryPivot";
    case NodeKind::IsolatedLooped:
      return "IsolatedLooped";
    case NodeKind::IsolatedUnlooped:
      return "IsolatedUnlooped";
    case NodeKind::EdgelessClosure:
      return "EdgelessClosure";
    case NodeKind::ReductionStep:
      return "ReductionStep";
    case NodeKind::EmptyLeaf:
      return "EmptyLeaf";
  }
  return "?";
}

std::string_view to_string(Strategy::Kind kind) {
  switch (kind) {
    case Strategy::Kind::FirstVertex:
      return "first";
    case Strategy::Kind::Tree:
      return "tree";
    case Strategy::Kind::ReduceFirst:
      return "reduce-first";
  }
  return "?";
}

Strategy Strategy::tree(std::string root, std::map<std::string, std::vector<std::string>> child_order) {
  Strategy s(Kind::Tree);
  s.root_ = std::move(root);
  s.child_order_ = std::move(child_order);
  return s;
}

// ---------------------------------------------------------------------------
// ComputationTree

namespace {

Poly evaluate_node(const ComputationNode& node) {
  switch (node.kind) {
    case NodeKind::EmptyLeaf:
      return 1;
    case NodeKind::EdgelessClosure:
      return node.closure;
    default:
      break;
  }
  Poly total;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (!node.children[i] || node.coefficients[i].is_zero()) continue;
    total += node.coefficients[i] * evaluate_node(*node.children[i]);
  }
  return total;
}

void write_node(std::ostringstream& out, const ComputationNode* node, const Poly& coef, std::size_t depth) {
  out << std::string(2 * depth, ' ');
  if (!node) {
    out << "Pruned coef=" << coef.to_string() << '\n';
    return;
  }
  out << to_string(node->kind);
  if (node->reduction) out << '(' << to_string(*node->reduction) << ')';
  if (!node->vertices.empty()) {
    out << " [";
    for (std::size_t i = 0; i < node->vertices.size(); ++i) out << (i ? "," : "") << node->vertices[i];
    out << ']';
  }
  out << " coef=" << coef.to_string();
  if (node->kind == NodeKind::EdgelessClosure) out << " value=" << node->closure.to_string();
  out << '\n';
  for (std::size_t i = 0; i < node->children.size(); ++i) {
    write_node(out, node->children[i].get(), node->coefficients[i], depth + 1);
  }
}

bool is_leaf_kind(NodeKind k) { return k == NodeKind::EmptyLeaf || k == NodeKind::EdgelessClosure; }

bool is_active_kind(NodeKind k) {
  return k == NodeKind::IsolatedLooped || k == NodeKind::IsolatedUnlooped || k == NodeKind::ReductionStep;
}

void collect_stats(const ComputationNode& node, TreeStats& stats) {
  ++stats.nodes;
  ++stats.by_kind[node.kind];
  if (is_leaf_kind(node.kind)) ++stats.leaves;
  if (is_active_kind(node.kind)) ++stats.active_nodes;
  if (node.graph_connected) {
    bool connected_child = std::any_of(node.children.begin(), node.children.end(),
                                       [](const auto& c) { return c && c->graph_connected; });
    if (!connected_child) ++stats.connected_leaves;
  }
  for (const auto& c : node.children) {
    if (c) collect_stats(*c, stats);
  }
}

}  // namespace

Poly ComputationTree::evaluate() const { return evaluate_node(*root_); }

std::string ComputationTree::to_text() const {
  std::ostringstream out;
  write_node(out, root_.get(), Poly(1), 0);
  return out.str();
}

TreeStats tree_stats(const ComputationTree& tree) {
  TreeStats stats;
  collect_stats(tree.root(), stats);
  return stats;
}

// ---------------------------------------------------------------------------
// Recursion

namespace {

using Index = WeightedGraph::Index;

struct Branch {
  Poly coefficient;
  WeightedGraph graph;
};

struct Decision {
  NodeKind kind;
  std::optional<ReductionKind> reduction;
  std::vector<std::string> vertices;
  std::vector<Branch> branches;
  Poly closure;
};

class TreeShape {
 public:
  // Rooted structure of the current graph; sibling order comes from the
  // strategy, falling back to vertex-list order.
  TreeShape(const WeightedGraph& g, const Strategy& s) : g_(g), parent_(g.size()), children_(g.size()) {
    root_ = g.index_of(s.root());
    std::vector<bool> seen(g.size(), false);
    std::vector<Index> queue{root_};
    seen[root_] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (auto v : g.neighbors(queue[h])) {
        if (seen[v]) continue;
        seen[v] = true;
        parent_[v] = queue[h];
        children_[queue[h]].push_back(v);
        queue.push_back(v);
      }
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!seen[v] && g.degree(v) > 0) throw StrategyError("tree strategy reached a vertex outside the root's tree");
    }
    for (std::size_t p = 0; p < g.size(); ++p) {
      auto it = s.child_order().find(g.label(p));
      if (it == s.child_order().end()) continue;
      const auto& order = it->second;
      auto rank = [&](Index c) {
        return static_cast<std::size_t>(std::find(order.begin(), order.end(), g.label(c)) - order.begin());
      };
      std::stable_sort(children_[p].begin(), children_[p].end(), [&](Index a, Index b) { return rank(a) < rank(b); });
    }
  }

  // (a, b) for the next pivot: a leaf whose parent is not the root and whose
  // siblings are all leaves, taken last among them; else the root's last child.
  std::pair<Index, Index> next_pivot() const {
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (v == root_ || children_[v].empty()) continue;
      bool all_leaves = std::all_of(children_[v].begin(), children_[v].end(),
                                    [&](Index c) { return children_[c].empty(); });
      if (all_leaves) return {children_[v].back(), v};
    }
    if (children_[root_].empty()) throw StrategyError("tree strategy found no pivot");
    return {children_[root_].back(), root_};
  }

 private:
  const WeightedGraph& g_;
  Index root_ = 0;
  std::vector<std::optional<Index>> parent_;
  std::vector<std::vector<Index>> children_;
};

void validate_tree_input(const WeightedGraph& g, const Strategy& s) {
  if (!g.contains(s.root())) throw StrategyError("tree strategy root '" + s.root() + "' is not a vertex");
  if (g.has_loops()) throw StrategyError("tree strategy needs a loopless tree");
  if (g.edge_count() + 1 != g.size() || connected_components(g).size() != 1) {
    throw StrategyError("tree strategy needs a connected acyclic graph");
  }
  std::vector<std::optional<Index>> parent(g.size());
  std::vector<Index> queue{g.index_of(s.root())};
  std::vector<bool> seen(g.size(), false);
  seen[queue[0]] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (auto v : g.neighbors(queue[h])) {
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = queue[h];
      queue.push_back(v);
    }
  }
  for (const auto& [label, kids] : s.child_order()) {
    const auto p = g.index_of(label);
    std::vector<std::string> expected;
    for (auto v : g.neighbors(p)) {
      if (parent[p] != v) expected.push_back(g.label(v));
    }
    std::vector<std::string> listed = kids;
    std::sort(expected.begin(), expected.end());
    std::sort(listed.begin(), listed.end());
    if (expected != listed) {
      throw StrategyError("child order for '" + label + "' does not list exactly its children");
    }
  }
}

class Recursor {
 public:
  Recursor(const Strategy& s, const RecursionOptions& o) : strategy_(s), opts_(o) {}

  Poly solve(const WeightedGraph& g, ComputationNode* node) {
    Decision d = decide(g);
    if (node) {
      node->kind = d.kind;
      node->reduction = d.reduction;
      node->vertices = d.vertices;
      node->graph_size = g.size();
      node->graph_connected = !g.empty() && connected_components(g).size() == 1;
      if (d.kind == NodeKind::EdgelessClosure) node->closure = d.closure;
    }
    if (d.kind == NodeKind::EmptyLeaf) return 1;
    if (d.kind == NodeKind::EdgelessClosure) return d.closure;

    const bool prune = opts_.prune_zero && !opts_.leaf_bound_mode;
    Poly total;
    for (auto& b : d.branches) {
      std::unique_ptr<ComputationNode> child;
      if (prune && b.coefficient.is_zero()) {
        if (node) {
          node->coefficients.push_back(b.coefficient);
          node->children.push_back(nullptr);
        }
        continue;
      }
      if (node) child = std::make_unique<ComputationNode>();
      Poly value = solve(b.graph, child.get());
      if (!b.coefficient.is_zero()) total += b.coefficient * value;
      if (node) {
        node->coefficients.push_back(b.coefficient);
        node->children.push_back(std::move(child));
      }
    }
    return total;
  }

 private:
  Decision decide(const WeightedGraph& g) {
    Decision d;
    if (g.empty()) {
      d.kind = NodeKind::EmptyLeaf;
      return d;
    }
    if (opts_.edgeless_closure && !g.has_non_loop_edges() && !(opts_.leaf_bound_mode && g.has_loops())) {
      d.kind = NodeKind::EdgelessClosure;
      d.closure = edgeless_closure(g);
      return d;
    }
    for (Index v = 0; v < g.size(); ++v) {
      if (g.degree(v) != 0) continue;
      if (g.looped(v) && opts_.leaf_bound_mode) continue;
      Index drop = v;
      d.kind = g.looped(v) ? NodeKind::IsolatedLooped : NodeKind::IsolatedUnlooped;
      d.vertices = {g.label(v)};
      Poly coef = g.alpha(v) * (g.looped(v) ? x_minus_1() : y_minus_1()) + g.beta(v);
      d.branches.push_back({std::move(coef), delete_vertices_at(g, std::span(&drop, 1))});
      return d;
    }
    if (strategy_.kind() == Strategy::Kind::ReduceFirst) {
      ReductionScan scan;
      scan.allow_fraternal = !opts_.leaf_bound_mode;
      if (auto step = find_reduction(g, scan)) {
        d.kind = NodeKind::ReductionStep;
        d.reduction = step->kind;
        d.vertices.push_back(step->survivor);
        d.vertices.insert(d.vertices.end(), step->removed.begin(), step->removed.end());
        d.branches.push_back({Poly(1), apply_reduction(g, *step)});
        return d;
      }
    }
    if (strategy_.kind() == Strategy::Kind::Tree) {
      auto [a, b] = TreeShape(g, strategy_).next_pivot();
      pivot_branches(g, a, b, d);
      return d;
    }
    for (Index v = 0; v < g.size(); ++v) {
      if (!g.looped(v)) continue;
      Index drop = v;
      d.kind = NodeKind::LoopBranch;
      d.vertices = {g.label(v)};
      d.branches.push_back({g.beta(v), delete_vertices_at(g, std::span(&drop, 1))});
      d.branches.push_back({g.alpha(v) * x_minus_1(), delete_vertices_at(local_complement_at(g, v), std::span(&drop, 1))});
      return d;
    }
    for (Index a = 0; a < g.size(); ++a) {
      for (Index b = a + 1; b < g.size(); ++b) {
        if (g.adjacent(a, b)) {
          pivot_branches(g, a, b, d);
          return d;
        }
      }
    }
    throw StrategyError("no applicable recursion step");  // unreachable: edgeless graphs close above
  }

  void pivot_branches(const WeightedGraph& g, Index a, Index b, Decision& d) const {
    if (g.looped(a) || g.looped(b) || !g.adjacent(a, b)) throw StrategyError("pivot needs loopless neighbors");
    d.vertices = {g.label(a), g.label(b)};
    const WeightedGraph piv = pivot_at(g, a, b);
    Index only_a = a;
    const Poly xm1_sq = x_minus_1() * x_minus_1();
    if (!opts_.ternary) {
      d.kind = NodeKind::BinaryPivot;
      Index only_b = b;
      WeightedGraph reweighted = piv;
      reweighted.set_weights(a, g.beta(b), g.alpha(b) * xm1_sq);
      d.branches.push_back({g.beta(a), delete_vertices_at(g, std::span(&only_a, 1))});
      d.branches.push_back({g.alpha(a), delete_vertices_at(reweighted, std::span(&only_b, 1))});
      return;
    }
    d.kind = NodeKind::TernaryPivot;
    Index only_b = b;
    const Index both[2] = {a, b};
    d.branches.push_back({g.beta(a), delete_vertices_at(g, std::span(&only_a, 1))});
    d.branches.push_back({g.beta(b), delete_vertices_at(piv, std::span(&only_b, 1))});
    d.branches.push_back({g.alpha(a) * g.alpha(b) * xm1_sq - g.beta(a) * g.beta(b), delete_vertices_at(piv, both)});
  }

  const Strategy& strategy_;
  const RecursionOptions& opts_;
};

}  // namespace

RecursionResult q_recursive(const WeightedGraph& g, const Strategy& strategy, const RecursionOptions& options) {
  if (strategy.kind() == Strategy::Kind::Tree) validate_tree_input(g, strategy);
  Recursor r(strategy, options);
  RecursionResult result;
  if (options.record_tree) {
    auto root = std::make_unique<ComputationNode>();
    result.value = r.solve(g, root.get());
    result.tree.emplace(std::move(root));
  } else {
    result.value = r.solve(g, nullptr);
  }
  return result;
}

WeightedGraph reweight_linear(const WeightedGraph& g, std::string_view a, const Poly& r1, const Poly& r2) {
  const auto i = g.index_of(a);
  WeightedGraph out = g;
  out.set_weights(i, r1 * g.alpha(i), r1 * g.beta(i) + r2);
  return out;
}

bool pivot_reweight_identity_check(const WeightedGraph& g, std::string_view a, std::string_view b) {
  const auto ia = g.index_of(a);
  const auto ib = g.index_of(b);
  if (ia == ib || g.looped(ia) || g.looped(ib) || !g.adjacent(ia, ib)) {
    throw GraphError("pivot identity needs two unlooped neighbors");
  }
  const Poly xm1_sq = x_minus_1() * x_minus_1();
  WeightedGraph primed = pivot_at(g, ia, ib);
  primed.set_weights(ia, g.beta(ib), g.alpha(ib) * xm1_sq);
  primed.set_weights(ib, g.beta(ia), g.alpha(ia) * xm1_sq);
  return xm1_sq * q_expand(g) == q_expand(primed);
}

LeafBoundReport check_leaf_bound(const WeightedGraph& g, const Strategy& strategy, bool ternary) {
  RecursionOptions opts;
  opts.leaf_bound_mode = true;
  opts.ternary = ternary;
  opts.record_tree = true;
  auto result = q_recursive(g, strategy, opts);
  auto stats = tree_stats(*result.tree);
  LeafBoundReport r;
  r.strategy = strategy.kind();
  r.ternary = ternary;
  r.leaves = stats.leaves;
  r.connected_leaves = stats.connected_leaves;
  r.active_nodes = stats.active_nodes;
  r.epsilon = epsilon(g);
  const Integer twice = 2 * Integer(stats.leaves);
  r.satisfied = twice >= r.epsilon;
  if (is_simple(g)) {
    r.gamma = gamma(g);
    r.satisfied = r.satisfied && twice >= *r.gamma;
  }
  return r;
}

std::vector<LeafBoundReport> check_leaf_bound(const WeightedGraph& g) {
  std::vector<LeafBoundReport> out;
  for (auto s : {Strategy::first_vertex(), Strategy::reduce_first()}) {
    for (bool ternary : {false, true}) out.push_back(check_leaf_bound(g, s, ternary));
  }
  return out;
}

}  // namespace interlace
