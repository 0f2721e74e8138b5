#include "interlace/trees.hpp"

#include "interlace/recursion.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace interlace {

namespace {

using Index = WeightedGraph::Index;

std::uint64_t bit(Index v) { return std::uint64_t{1} << v; }

}  // namespace

OrderedRootedTree::OrderedRootedTree(WeightedGraph g, std::string root,
                                     std::map<std::string, std::vector<std::string>> child_order)
    : g_(std::move(g)), parent_(g_.size()), children_(g_.size()) {
  if (!g_.contains(root)) throw TreeError("root '" + root + "' is not a vertex");
  if (g_.has_loops()) throw TreeError("a tree must be loopless");
  if (g_.edge_count() + 1 != g_.size() || connected_components(g_).size() != 1) {
    throw TreeError("graph is not a tree (connected and acyclic)");
  }
  root_ = g_.index_of(root);
  std::vector<bool> seen(g_.size(), false);
  std::vector<Index> queue{root_};
  seen[root_] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Index u = queue[h];
    for (auto v : g_.neighbors(u)) {
      if (seen[v]) continue;
      seen[v] = true;
      parent_[v] = u;
      queue.push_back(v);
    }
  }
  for (Index v = 0; v < g_.size(); ++v) {
    if (parent_[v]) children_[*parent_[v]].push_back(v);
  }
  for (const auto& [label, kids] : child_order) {
    const auto p = g_.find(label);
    if (!p) throw TreeError("order names unknown vertex '" + label + "'");
    std::vector<Index> listed;
    for (const auto& k : kids) {
      const auto c = g_.find(k);
      if (!c) throw TreeError("order names unknown vertex '" + k + "'");
      listed.push_back(*c);
    }
    std::vector<Index> a = listed;
    std::vector<Index> b = children_[*p];
    std::sort(a.begin(), a.end());
    if (a != b) throw TreeError("order for '" + label + "' must list each of its children exactly once");
    children_[*p] = std::move(listed);
  }
}

std::vector<OrderedRootedTree::Index> OrderedRootedTree::later_siblings(Index v) const {
  if (!parent_[v]) return {};
  const auto& sib = children_[*parent_[v]];
  auto it = std::find(sib.begin(), sib.end(), v);
  return {it + 1, sib.end()};
}

std::map<std::string, std::vector<std::string>> OrderedRootedTree::child_order() const {
  std::map<std::string, std::vector<std::string>> out;
  for (Index p = 0; p < size(); ++p) {
    if (children_[p].empty()) continue;
    auto& list = out[g_.label(p)];
    for (auto c : children_[p]) list.push_back(g_.label(c));
  }
  return out;
}

std::vector<std::string> EsCover::labels(const OrderedRootedTree& t) const {
  std::vector<std::string> out;
  for (Index v = 0; v < t.size(); ++v) {
    if (members & bit(v)) out.push_back(t.graph().label(v));
  }
  return out;
}

namespace {

std::uint64_t closed_neighborhood(const OrderedRootedTree& t, Index v) {
  std::uint64_t m = bit(v);
  for (auto u : t.graph().neighbors(v)) m |= bit(u);
  return m;
}

void check_enumerable(const OrderedRootedTree& t) {
  if (t.size() > kMaxCoverEnumerationVertices) {
    throw TreeError("es-cover enumeration is limited to " + std::to_string(kMaxCoverEnumerationVertices) +
                    " vertices");
  }
}

}  // namespace

bool is_es_cover(const OrderedRootedTree& t, std::uint64_t members) {
  check_enumerable(t);
  const auto& g = t.graph();
  std::uint64_t dominated = 0;
  for (Index v = 0; v < t.size(); ++v) {
    if (!(members & bit(v))) continue;
    for (auto u : g.neighbors(v)) {
      if (members & bit(u)) return false;
    }
    dominated |= closed_neighborhood(t, v);
  }
  if (!(dominated & bit(t.root()))) return false;
  for (Index v = 0; v < t.size(); ++v) {
    if (!(members & bit(v)) || v == t.root()) continue;
    const auto& sib = t.children(*t.parent(v));
    for (auto s : sib) {
      if (s == v) break;
      if (!(dominated & bit(s))) return false;
    }
  }
  return true;
}

EsCover make_es_cover(const OrderedRootedTree& t, std::uint64_t members) {
  if (!is_es_cover(t, members)) throw TreeError("vertex set is not an es-cover");
  EsCover c;
  c.members = members;
  for (Index v = 0; v < t.size(); ++v) {
    if (members & bit(v)) {
      const auto later = t.later_siblings(v);
      const bool has_later =
          std::any_of(later.begin(), later.end(), [&](Index s) { return (members & bit(s)) != 0; });
      (v == t.root() || has_later ? c.root_part : c.last_part) |= bit(v);
    } else {
      const auto& kids = t.children(v);
      if (std::any_of(kids.begin(), kids.end(), [&](Index k) { return (members & bit(k)) != 0; })) {
        c.parent_part |= bit(v);
      }
    }
  }
  return c;
}

std::vector<EsCover> es_covers(const OrderedRootedTree& t) {
  check_enumerable(t);
  const std::size_t n = t.size();
  std::vector<std::uint64_t> found;
  // Independent sets by include/exclude search, then the cover test.
  std::function<void(Index, std::uint64_t, std::uint64_t)> walk = [&](Index v, std::uint64_t chosen,
                                                                      std::uint64_t blocked) {
    if (v == n) {
      if (is_es_cover(t, chosen)) found.push_back(chosen);
      return;
    }
    walk(v + 1, chosen, blocked);
    if (!(blocked & bit(v))) walk(v + 1, chosen | bit(v), blocked | closed_neighborhood(t, v));
  };
  walk(0, 0, 0);
  std::sort(found.begin(), found.end());
  std::vector<EsCover> out;
  out.reserve(found.size());
  for (auto m : found) out.push_back(make_es_cover(t, m));
  return out;
}

EsNumbers es_numbers(const OrderedRootedTree& t) {
  EsNumbers out;
  for (const auto& c : es_covers(t)) {
    std::set<Index> parents;
    for (Index v = 0; v < t.size(); ++v) {
      if ((c.members & bit(v)) && v != t.root()) parents.insert(*t.parent(v));
    }
    out[{static_cast<std::size_t>(std::popcount(c.members)), parents.size()}] += 1;
  }
  return out;
}

Poly cover_weight(const OrderedRootedTree& t, const EsCover& cover) {
  if (make_es_cover(t, cover.members) != cover) throw TreeError("cover partition does not match its members");
  const auto& g = t.graph();
  const Poly ym1 = y_minus_1();
  const Poly xm1_sq = x_minus_1() * x_minus_1();
  Poly w = 1;
  for (Index v = 0; v < t.size(); ++v) {
    if (cover.root_part & bit(v)) {
      w *= g.beta(v) + g.alpha(v) * ym1;
    } else if (cover.last_part & bit(v)) {
      const Index p = *t.parent(v);
      w *= g.alpha(v) * (ym1 * g.beta(p) + xm1_sq * g.alpha(p));
    } else if (!(cover.parent_part & bit(v))) {
      w *= g.beta(v);
    }
  }
  return w;
}

Poly q_tree(const OrderedRootedTree& t) {
  Poly total;
  for (const auto& c : es_covers(t)) total += cover_weight(t, c);
  return total;
}

Poly q_tree_unweighted(const OrderedRootedTree& t) {
  const Poly y = Poly::y();
  const Poly edge = y_minus_1() + x_minus_1() * x_minus_1();
  Poly total;
  for (const auto& [st, count] : es_numbers(t)) {
    const auto [s, parents] = st;
    total += Poly(count) * y.pow(static_cast<std::uint32_t>(s - parents)) * edge.pow(static_cast<std::uint32_t>(parents));
  }
  return total;
}

Poly q_forest_unweighted(const WeightedGraph& forest) {
  Poly total = 1;
  for (const auto& comp : connected_components(forest)) {
    WeightedGraph part = induced_subgraph_at(forest, comp);
    total *= q_tree_unweighted(OrderedRootedTree(std::move(part), forest.label(comp.front())));
  }
  return total;
}

std::vector<std::uint64_t> tree_strategy_leaf_sets(const OrderedRootedTree& t) {
  RecursionOptions opts;
  opts.prune_zero = false;
  opts.record_tree = true;
  const auto result = q_recursive(t.graph(), Strategy::tree(t.root_label(), t.child_order()), opts);
  std::vector<std::uint64_t> sets;
  std::function<void(const ComputationNode&, std::uint64_t)> walk = [&](const ComputationNode& node,
                                                                       std::uint64_t acc) {
    switch (node.kind) {
      case NodeKind::EmptyLeaf:
        sets.push_back(acc);
        return;
      case NodeKind::IsolatedUnlooped:
        walk(*node.children[0], acc | bit(t.graph().index_of(node.vertices[0])));
        return;
      case NodeKind::BinaryPivot:
        walk(*node.children[0], acc);
        walk(*node.children[1], acc | bit(t.graph().index_of(node.vertices[0])));
        return;
      default:
        throw TreeError("unexpected step in tree-strategy recursion: " + std::string(to_string(node.kind)));
    }
  };
  walk(result.tree->root(), 0);
  return sets;
}

bool verify_tree_strategy_bijection(const OrderedRootedTree& t) {
  std::vector<std::uint64_t> leaves = tree_strategy_leaf_sets(t);
  std::sort(leaves.begin(), leaves.end());
  if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end()) return false;
  std::vector<std::uint64_t> covers;
  for (const auto& c : es_covers(t)) covers.push_back(c.members);
  return leaves == covers;
}

}  // namespace interlace
