#pragma once

#include "interlace/graph.hpp"
#include "interlace/poly.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace interlace {

class CompositionError : public GraphError {
 public:
  using GraphError::GraphError;
};

// The composition H * K along the shared marker vertex a: a is removed and
// every H-neighbor of a is joined to every K-neighbor of a. a must be the
// only common vertex, unlooped and unweighted on both sides.
WeightedGraph compose(const WeightedGraph& h, const WeightedGraph& k, std::string_view a);

// With M the matrix of (H-a)[S] and kappa the column of a restricted to S:
//   1: r(M) = r(M k; k' 0) = r(M k; k' 1) - 1
//   2: r(M) + 2 = r(M k; k' 0) = r(M k; k' 1)
//   3: r(M) = r(M k; k' 1) = r(M k; k' 0) - 1
enum class SubsetType : int { One = 1, Two = 2, Three = 3 };

// Classification from the two bordered matrices.
SubsetType subset_type_bordered(const WeightedGraph& h, std::string_view a, std::span<const std::string> s);
// Classification from r(M) against r(M^a), M^a toggling the N(a) x N(a) block.
SubsetType subset_type_local(const WeightedGraph& h, std::string_view a, std::span<const std::string> s);
// Both classifications; throws std::logic_error if they disagree.
SubsetType subset_type(const WeightedGraph& h, std::string_view a, std::span<const std::string> s);

struct TypeSums {
  Poly q1;
  Poly q2;
  Poly q3;
};

struct CompositionWeights {
  Poly alpha_a;
  Poly beta_a;
  Poly beta_ac;
};

namespace serial {
// One subset at a time, no partitioning.
TypeSums type_sums(const WeightedGraph& h, std::string_view a);
CompositionWeights composition_weights(const WeightedGraph& h, std::string_view a);
}  // namespace serial

// q_i = sum over type-i subsets S of the summand of (H-a)[S].
TypeSums type_sums(const WeightedGraph& h, std::string_view a);

// beta(a) = q1, beta(a_c) = q3, alpha(a) = q2 / (y-1). The division is done
// per subset by lowering the (y-1) exponent; a type-2 subset of nullity 0
// raises std::logic_error.
CompositionWeights composition_weights(const WeightedGraph& h, std::string_view a);

// Label for the extra marker copy: a + "~c", extended until unused in k.
std::string complement_marker(const WeightedGraph& k, std::string_view a);

// q(K') + q((K^a)'), where K' carries alpha(a), beta(a) on a and (K^a)'
// carries alpha = 0, beta(a_c) on the renamed marker. The second term is
// skipped when beta(a_c) = 0.
Poly q_composed(const WeightedGraph& h, std::string_view a, const WeightedGraph& k);

// Polynomial identities linking q1, q2, q3 to H, H with a loop at a, and
// H^a - a, all with denominators cleared.
struct TypeSumIdentities {
  bool sum_is_q_minus_a = false;
  bool q_h = false;
  bool q_h_looped = false;
  bool q_h_local_minus_a = false;
  // ((x-1)^2 - (y-1)^2) alpha(a) = q(H) - y q(H-a); only for simple H.
  std::optional<bool> simple_alpha;
  bool all() const {
    return sum_is_q_minus_a && q_h && q_h_looped && q_h_local_minus_a && simple_alpha.value_or(true);
  }
};

TypeSumIdentities check_type_sum_identities(const WeightedGraph& h, std::string_view a);

}  // namespace interlace
