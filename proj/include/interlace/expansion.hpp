#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"

namespace interlace {

enum class PolyKind { q, qn, qr };

// Subset sums enumerate 2^n subsets; larger graphs are rejected.
inline constexpr std::size_t kMaxExpansionVertices = 20;

class ExpansionTooLarge : public GraphError {
 public:
  using GraphError::GraphError;
};

namespace serial {
// Reference implementation: one summand per subset, accumulated in order.
Poly expand(const WeightedGraph& g, PolyKind kind);
}  // namespace serial

// Subsets are partitioned across OpenMP threads; each chunk collects weight
// products per (rank, nullity) class, and the classes are combined at the end.
Poly expand(const WeightedGraph& g, PolyKind kind);

inline Poly q_expand(const WeightedGraph& g) { return expand(g, PolyKind::q); }
inline Poly qn_expand(const WeightedGraph& g) { return expand(g, PolyKind::qn); }
inline Poly qr_expand(const WeightedGraph& g) { return expand(g, PolyKind::qr); }

// q -> q_N (x = 2) or q -> q_R (y = 2); identity for PolyKind::q.
Poly specialize(const Poly& q, PolyKind kind);

// Coefficient of y in q_N(G^u), and q_N(G^u) at y = 0. Weights are ignored.
Integer gamma(const WeightedGraph& g);
Integer epsilon(const WeightedGraph& g);

struct SimplicityReport {
  bool no_loops = false;          // G is simple
  bool y_divides = false;         // y | q_N(G + E1), E1 joined to all of G
  bool matches_complement = false;  // q_N(G + E1) == y * q_N(G^c)
  Poly qn_plus_isolated;
  Poly y_times_qn_complement;
  bool consistent() const { return no_loops == y_divides && no_loops == matches_complement; }
};

// Runs on the unweighted version of G.
SimplicityReport simplicity_test(const WeightedGraph& g);

// (x-1)^n * q(G), rebuilt from q_N of the graph re-weighted by fresh
// indeterminates: alpha_i -> (x-1) alpha(v_i), beta_i -> beta(v_i) and
// y -> 1 + (y-1)/(x-1), with the (x-1) denominators cleared.
Poly cleared_q_from_indeterminate_qn(const WeightedGraph& g);

}  // namespace interlace
