#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"

#include <string_view>

namespace interlace {

// Each check evaluates both sides by subset expansion and compares them
// exactly. Preconditions are enforced with GraphError.

// a unlooped: q(G) - beta(a) q(G-a) == q(G^a) - beta(a) q(G^a - a).
bool local_complement_identity(const WeightedGraph& g, std::string_view a);

// a, b unlooped neighbors:
// q(G-a) - beta(b) q(G-a-b) == q(G^ab - a) - beta(b) q(G^ab - a - b).
bool pivot_deletion_identity(const WeightedGraph& g, std::string_view a, std::string_view b);

// q(G1 + G2) == q(G1) q(G2) for vertex-disjoint G1, G2.
bool union_multiplicativity(const WeightedGraph& g1, const WeightedGraph& g2);

// alpha' = r1 alpha(a), beta' = r1 beta(a) + r2: q(G') == r1 q(G) + r2 q(G-a).
bool linear_reweight_identity(const WeightedGraph& g, std::string_view a, const Poly& r1, const Poly& r2);

// Graphs equal except at a: q(G1) + q(G2) == q(G) with the weights of a added.
bool weight_additivity(const WeightedGraph& g, std::string_view a, const Poly& alpha1, const Poly& beta1,
                       const Poly& alpha2, const Poly& beta2);

// (x-1)^n q(G) equals the cleared substitution into q_N of the graph
// weighted by fresh indeterminates.
bool nullity_substitution_identity(const WeightedGraph& g);

}  // namespace interlace
