#include "interlace/expansion.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace interlace {

namespace {

void check_size(const WeightedGraph& g) {
  if (g.size() > kMaxExpansionVertices) {
    throw ExpansionTooLarge("subset expansion is limited to " + std::to_string(kMaxExpansionVertices) +
                            " vertices (graph has " + std::to_string(g.size()) + ")");
  }
}

Poly weight_product(const WeightedGraph& g, std::uint64_t subset) {
  Poly w = 1;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Poly& f = (subset >> v) & 1U ? g.alpha(v) : g.beta(v);
    if (!f.is_one()) w *= f;
    if (w.is_zero()) break;
  }
  return w;
}

// Powers (x-1)^k and (y-1)^k for k <= n.
struct FactorPowers {
  std::vector<Poly> xm1;
  std::vector<Poly> ym1;
  explicit FactorPowers(std::size_t n) : xm1(n + 1), ym1(n + 1) {
    xm1[0] = 1;
    ym1[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      xm1[k] = xm1[k - 1] * x_minus_1();
      ym1[k] = ym1[k - 1] * y_minus_1();
    }
  }
  Poly factor(PolyKind kind, RankNullity rn) const {
    switch (kind) {
      case PolyKind::q:
        return xm1[rn.rank] * ym1[rn.nullity];
      case PolyKind::qn:
        return ym1[rn.nullity];
      case PolyKind::qr:
        return xm1[rn.rank];
    }
    return 1;
  }
};

// x = 2 (or y = 2) also applies inside the weights, so the specialized sums
// agree with substituting into q.
WeightedGraph specialized_weights(const WeightedGraph& g, PolyKind kind) {
  WeightedGraph out = g;
  if (kind == PolyKind::q) return out;
  for (std::size_t v = 0; v < out.size(); ++v) {
    out.set_weights(v, specialize(g.alpha(v), kind), specialize(g.beta(v), kind));
  }
  return out;
}

}  // namespace

namespace serial {

Poly expand(const WeightedGraph& graph, PolyKind kind) {
  check_size(graph);
  const WeightedGraph g = specialized_weights(graph, kind);
  const std::size_t n = g.size();
  const FactorPowers powers(n);
  Poly total;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    Poly w = weight_product(g, s);
    if (w.is_zero()) continue;
    total += w * powers.factor(kind, rank_nullity_mask(g, s));
  }
  return total;
}

}  // namespace serial

Poly expand(const WeightedGraph& graph, PolyKind kind) {
  check_size(graph);
  const WeightedGraph g = specialized_weights(graph, kind);
  const std::size_t n = g.size();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  // Rank r and nullity n - r determine the class; index buckets by rank and
  // subset size.
  const std::size_t classes = (n + 1) * (n + 1);
  const std::int64_t chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(subsets, 256));
  const std::uint64_t per_chunk = (subsets + static_cast<std::uint64_t>(chunks) - 1) / chunks;
  std::vector<std::vector<Poly>> partial(static_cast<std::size_t>(chunks), std::vector<Poly>(classes));

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    auto& buckets = partial[static_cast<std::size_t>(c)];
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * per_chunk;
    const std::uint64_t end = std::min(subsets, begin + per_chunk);
    for (std::uint64_t s = begin; s < end; ++s) {
      Poly w = weight_product(g, s);
      if (w.is_zero()) continue;
      RankNullity rn = rank_nullity_mask(g, s);
      buckets[rn.rank * (n + 1) + rn.rank + rn.nullity] += w;
    }
  }

  std::vector<Poly> merged(classes);
  for (const auto& buckets : partial) {
    for (std::size_t k = 0; k < classes; ++k) merged[k] += buckets[k];
  }
  const FactorPowers powers(n);
  Poly total;
  for (std::size_t rank = 0; rank <= n; ++rank) {
    for (std::size_t size = rank; size <= n; ++size) {
      const Poly& w = merged[rank * (n + 1) + size];
      if (w.is_zero()) continue;
      total += w * powers.factor(kind, {rank, size - rank});
    }
  }
  return total;
}

Poly specialize(const Poly& q, PolyKind kind) {
  switch (kind) {
    case PolyKind::q:
      return q;
    case PolyKind::qn:
      return substitute(q, std::map<std::string, Poly>{{"x", Poly(2)}});
    case PolyKind::qr:
      return substitute(q, std::map<std::string, Poly>{{"y", Poly(2)}});
  }
  return q;
}

Integer gamma(const WeightedGraph& g) {
  return qn_expand(unweighted(g)).coefficient(Monomial::variable(kVarY));
}

Integer epsilon(const WeightedGraph& g) { return qn_expand(unweighted(g)).coefficient(Monomial{}); }

SimplicityReport simplicity_test(const WeightedGraph& g) {
  const WeightedGraph base = unweighted(g);
  std::string fresh = "e1";
  while (base.contains(fresh)) fresh += "_";
  // G + E1: the new vertex is joined to every vertex of G.
  WeightedGraph single;
  single.add_vertex(fresh);
  const WeightedGraph plus = join(base, single);

  SimplicityReport r;
  r.no_loops = is_simple(base);
  r.qn_plus_isolated = qn_expand(plus);
  r.y_times_qn_complement = Poly::y() * qn_expand(complement(base));
  try {
    (void)exact_div(r.qn_plus_isolated, Poly::y());
    r.y_divides = true;
  } catch (const DivisionError&) {
    r.y_divides = false;
  }
  r.matches_complement = r.qn_plus_isolated == r.y_times_qn_complement;
  return r;
}

Poly cleared_q_from_indeterminate_qn(const WeightedGraph& g) {
  const std::size_t n = g.size();
  WeightedGraph tilde = g;
  std::map<std::string, Poly> back;
  for (std::size_t i = 0; i < n; ++i) {
    std::string a = "_alpha" + std::to_string(i);
    std::string b = "_beta" + std::to_string(i);
    tilde.set_weights(i, Poly::variable(a), Poly::variable(b));
    back.emplace(a, x_minus_1() * g.alpha(i));
    back.emplace(b, g.beta(i));
  }
  const std::string z = "_ym1";
  back.emplace("y", Poly::variable(z) + 1);
  const Poly shifted = substitute(qn_expand(tilde), back);

  // Each z^k stands for ((y-1)/(x-1))^k; multiply through by (x-1)^n.
  const VarId zid = intern_variable(z);
  Poly out;
  for (const auto& [m, c] : shifted.terms()) {
    const std::uint32_t k = m.degree(zid);
    Monomial rest;
    for (const auto& f : m.factors()) {
      if (f.var != zid) rest = rest * Monomial::variable(f.var, f.exp);
    }
    out += Poly::monomial(rest, c) * y_minus_1().pow(k) * x_minus_1().pow(static_cast<std::uint32_t>(n) - k);
  }
  return out;
}

}  // namespace interlace
