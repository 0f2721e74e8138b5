#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace interlace {

class TreeError : public GraphError {
 public:
  using GraphError::GraphError;
};

// A loopless tree with a root and, for each parent, an order on its children.
// Parents absent from `child_order` keep their children in vertex-list order.
class OrderedRootedTree {
 public:
  using Index = WeightedGraph::Index;

  OrderedRootedTree(WeightedGraph g, std::string root, std::map<std::string, std::vector<std::string>> child_order = {});

  const WeightedGraph& graph() const { return g_; }
  std::size_t size() const { return g_.size(); }
  Index root() const { return root_; }
  const std::string& root_label() const { return g_.label(root_); }
  std::optional<Index> parent(Index v) const { return parent_[v]; }
  const std::vector<Index>& children(Index v) const { return children_[v]; }
  // Siblings of v that come after it.
  std::vector<Index> later_siblings(Index v) const;
  // The complete sibling order by label, suitable for Strategy::tree.
  std::map<std::string, std::vector<std::string>> child_order() const;

 private:
  WeightedGraph g_;
  Index root_ = 0;
  std::vector<std::optional<Index>> parent_;
  std::vector<std::vector<Index>> children_;
};

// Brute-force enumeration is limited to this many vertices.
inline constexpr std::size_t kMaxCoverEnumerationVertices = 30;

// An earlier-sibling cover, stored as vertex bit masks; the three parts
// determine its weight.
struct EsCover {
  std::uint64_t members = 0;
  std::uint64_t root_part = 0;     // the root, or a member with a later sibling in the cover
  std::uint64_t last_part = 0;     // non-root members with no later sibling in the cover
  std::uint64_t parent_part = 0;   // non-members with a child in the cover
  std::vector<std::string> labels(const OrderedRootedTree& t) const;
  bool operator==(const EsCover&) const = default;
};

// Independent, dominates the root, and every earlier sibling of a non-root
// member is dominated.
bool is_es_cover(const OrderedRootedTree& t, std::uint64_t members);
// Throws TreeError when `members` is not an es-cover.
EsCover make_es_cover(const OrderedRootedTree& t, std::uint64_t members);

// All es-covers in increasing order of their member mask.
std::vector<EsCover> es_covers(const OrderedRootedTree& t);

// (|I|, number of distinct parents of the non-root members) -> count.
using EsNumbers = std::map<std::pair<std::size_t, std::size_t>, Integer>;
EsNumbers es_numbers(const OrderedRootedTree& t);

Poly cover_weight(const OrderedRootedTree& t, const EsCover& cover);
// Sum of cover weights.
Poly q_tree(const OrderedRootedTree& t);
// sum c_{s,t} y^(s-t) (y - 1 + (x-1)^2)^t; ignores weights.
Poly q_tree_unweighted(const OrderedRootedTree& t);
// Product of q_tree_unweighted over components, each rooted at its first vertex.
Poly q_forest_unweighted(const WeightedGraph& forest);

// Vertex sets read off the leaves of the tree-strategy recursion: an isolated
// vertex step contributes its vertex, and the pivot branch on (G^ab - b)'
// contributes a. Masks in leaf order.
std::vector<std::uint64_t> tree_strategy_leaf_sets(const OrderedRootedTree& t);
// The leaf sets are exactly the es-covers, each once.
bool verify_tree_strategy_bijection(const OrderedRootedTree& t);

}  // namespace interlace
