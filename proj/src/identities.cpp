#include "interlace/identities.hpp"

#include "interlace/expansion.hpp"
#include "interlace/recursion.hpp"

#include <array>

namespace interlace {

bool local_complement_identity(const WeightedGraph& g, std::string_view a) {
  const auto ia = g.index_of(a);
  if (g.looped(ia)) throw GraphError("vertex '" + std::string(a) + "' must be unlooped");
  const WeightedGraph lc = local_complement_at(g, ia);
  const Poly& beta = g.beta(ia);
  return q_expand(g) - beta * q_expand(delete_vertex(g, a)) == q_expand(lc) - beta * q_expand(delete_vertex(lc, a));
}

bool pivot_deletion_identity(const WeightedGraph& g, std::string_view a, std::string_view b) {
  const auto ia = g.index_of(a);
  const auto ib = g.index_of(b);
  if (ia == ib || g.looped(ia) || g.looped(ib) || !g.adjacent(ia, ib)) {
    throw GraphError("pivot identity needs two unlooped neighbors");
  }
  const WeightedGraph piv = pivot_at(g, ia, ib);
  const std::array<WeightedGraph::Index, 2> both{ia, ib};
  const Poly& beta = g.beta(ib);
  return q_expand(delete_vertex(g, a)) - beta * q_expand(delete_vertices_at(g, both)) ==
         q_expand(delete_vertex(piv, a)) - beta * q_expand(delete_vertices_at(piv, both));
}

bool union_multiplicativity(const WeightedGraph& g1, const WeightedGraph& g2) {
  return q_expand(disjoint_union(g1, g2)) == q_expand(g1) * q_expand(g2);
}

bool linear_reweight_identity(const WeightedGraph& g, std::string_view a, const Poly& r1, const Poly& r2) {
  return q_expand(reweight_linear(g, a, r1, r2)) == r1 * q_expand(g) + r2 * q_expand(delete_vertex(g, a));
}

bool weight_additivity(const WeightedGraph& g, std::string_view a, const Poly& alpha1, const Poly& beta1,
                       const Poly& alpha2, const Poly& beta2) {
  return q_expand(with_weights(g, a, alpha1, beta1)) + q_expand(with_weights(g, a, alpha2, beta2)) ==
         q_expand(with_weights(g, a, alpha1 + alpha2, beta1 + beta2));
}

bool nullity_substitution_identity(const WeightedGraph& g) {
  return x_minus_1().pow(static_cast<std::uint32_t>(g.size())) * q_expand(g) == cleared_q_from_indeterminate_qn(g);
}

}  // namespace interlace
