#include "interlace/composition.hpp"

#include "interlace/expansion.hpp"
#include "interlace/recursion.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <stdexcept>
#include <vector>

namespace interlace {

using Index = WeightedGraph::Index;

WeightedGraph compose(const WeightedGraph& h, const WeightedGraph& k, std::string_view a) {
  const std::string marker(a);
  if (!h.contains(a) || !k.contains(a)) throw CompositionError("shared vertex '" + marker + "' missing from one side");
  for (const auto& label : h.labels()) {
    if (label != marker && k.contains(label)) {
      throw CompositionError("vertex '" + label + "' appears on both sides; only '" + marker + "' may be shared");
    }
  }
  const Index ha = h.index_of(a);
  const Index ka = k.index_of(a);
  if (h.looped(ha) || k.looped(ka)) throw CompositionError("shared vertex '" + marker + "' is looped");
  if (!h.alpha(ha).is_one() || !h.beta(ha).is_one() || !k.alpha(ka).is_one() || !k.beta(ka).is_one()) {
    throw CompositionError("shared vertex '" + marker + "' is weighted");
  }

  WeightedGraph g;
  auto copy_side = [&](const WeightedGraph& side, Index skip) {
    for (Index v = 0; v < side.size(); ++v) {
      if (v != skip) g.add_vertex(side.label(v), side.looped(v), side.alpha(v), side.beta(v));
    }
    for (Index u = 0; u < side.size(); ++u) {
      for (Index v = u + 1; v < side.size(); ++v) {
        if (u != skip && v != skip && side.adjacent(u, v)) g.add_edge(side.label(u), side.label(v));
      }
    }
  };
  copy_side(h, ha);
  copy_side(k, ka);
  for (auto u : h.neighbors(ha)) {
    for (auto v : k.neighbors(ka)) g.add_edge(h.label(u), k.label(v));
  }
  return g;
}

namespace {

void check_marker(const WeightedGraph& h, Index a) {
  if (h.looped(a)) throw CompositionError("marker '" + h.label(a) + "' is looped");
  if (!h.alpha(a).is_one() || !h.beta(a).is_one()) throw CompositionError("marker '" + h.label(a) + "' is weighted");
  if (h.size() > kMaxExpansionVertices + 1) throw ExpansionTooLarge("type sums need |V(H)| - 1 <= 20");
}

std::uint64_t subset_mask(const WeightedGraph& h, Index a, std::span<const std::string> s) {
  std::uint64_t mask = 0;
  for (const auto& label : s) {
    const Index v = h.index_of(label);
    if (v == a) throw CompositionError("subset must not contain the marker '" + label + "'");
    mask |= std::uint64_t{1} << v;
  }
  return mask;
}

// Precomputed variants of H used to classify subsets.
struct Classifier {
  const WeightedGraph& h;
  Index a;
  WeightedGraph looped_a;  // H with a loop at a
  WeightedGraph local;     // H^a
  Classifier(const WeightedGraph& graph, Index marker)
      : h(graph), a(marker), looped_a(graph), local(local_complement_at(graph, marker)) {
    looped_a.set_loop(a, true);
  }

  SubsetType bordered(std::uint64_t s, std::size_t rank_m) const {
    const std::uint64_t with_a = s | (std::uint64_t{1} << a);
    const std::size_t r0 = rank_nullity_mask(h, with_a).rank;
    const std::size_t r1 = rank_nullity_mask(looped_a, with_a).rank;
    if (r0 == rank_m && r1 == rank_m + 1) return SubsetType::One;
    if (r0 == rank_m + 2 && r1 == rank_m + 2) return SubsetType::Two;
    if (r1 == rank_m && r0 == rank_m + 1) return SubsetType::Three;
    throw std::logic_error("subset fits none of the three types");
  }

  SubsetType by_local(std::uint64_t s, std::size_t rank_m) const {
    const std::size_t r = rank_nullity_mask(local, s).rank;
    if (r == rank_m) return SubsetType::One;
    if (r == rank_m + 1) return SubsetType::Two;
    if (r + 1 == rank_m) return SubsetType::Three;
    throw std::logic_error("rank of M^a differs from rank of M by more than one");
  }

  SubsetType classify(std::uint64_t s, std::size_t rank_m) const {
    const SubsetType t = bordered(s, rank_m);
    if (t != by_local(s, rank_m)) throw std::logic_error("the two subset type classifications disagree");
    return t;
  }
};

// Weight products grouped by (type, rank, |S|).
struct TypeBuckets {
  std::size_t n;
  std::vector<Poly> cells;
  explicit TypeBuckets(std::size_t n_) : n(n_), cells(3 * (n_ + 1) * (n_ + 1)) {}
  Poly& at(SubsetType t, std::size_t rank, std::size_t size) {
    return cells[((static_cast<std::size_t>(t) - 1) * (n + 1) + rank) * (n + 1) + size];
  }
  const Poly& at(SubsetType t, std::size_t rank, std::size_t size) const {
    return cells[((static_cast<std::size_t>(t) - 1) * (n + 1) + rank) * (n + 1) + size];
  }
};

struct Enumeration {
  std::vector<Index> others;  // vertices of H - a in order

  std::uint64_t subset(std::uint64_t bits) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if ((bits >> i) & 1U) mask |= std::uint64_t{1} << others[i];
    }
    return mask;
  }
};

void classify_range(const Classifier& c, const Enumeration& e, std::uint64_t begin, std::uint64_t end,
                    TypeBuckets& out) {
  for (std::uint64_t bits = begin; bits < end; ++bits) {
    const std::uint64_t s = e.subset(bits);
    Poly w = 1;
    for (auto v : e.others) {
      const Poly& f = (s >> v) & 1U ? c.h.alpha(v) : c.h.beta(v);
      if (!f.is_one()) w *= f;
    }
    const std::size_t size = static_cast<std::size_t>(std::popcount(s));
    const std::size_t rank = rank_nullity_mask(c.h, s).rank;
    const SubsetType t = c.classify(s, rank);
    if (t == SubsetType::Two && rank == size) {
      throw std::logic_error("type-2 subset with nullity 0; (y-1) does not divide its summand");
    }
    if (!w.is_zero()) out.at(t, rank, size) += w;
  }
}

struct Totals {
  TypeSums sums;
  Poly alpha;  // q2 / (y-1)
};

Totals finish(const TypeBuckets& b) {
  const std::size_t n = b.n;
  std::vector<Poly> xm1(n + 1), ym1(n + 1);
  xm1[0] = ym1[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    xm1[k] = xm1[k - 1] * x_minus_1();
    ym1[k] = ym1[k - 1] * y_minus_1();
  }
  Totals t;
  for (std::size_t rank = 0; rank <= n; ++rank) {
    for (std::size_t size = rank; size <= n; ++size) {
      const std::size_t nullity = size - rank;
      if (const Poly& w = b.at(SubsetType::One, rank, size); !w.is_zero()) t.sums.q1 += w * xm1[rank] * ym1[nullity];
      if (const Poly& w = b.at(SubsetType::Three, rank, size); !w.is_zero()) t.sums.q3 += w * xm1[rank] * ym1[nullity];
      if (const Poly& w = b.at(SubsetType::Two, rank, size); !w.is_zero()) {
        t.sums.q2 += w * xm1[rank] * ym1[nullity];
        t.alpha += w * xm1[rank] * ym1[nullity - 1];
      }
    }
  }
  return t;
}

Totals totals_serial(const WeightedGraph& h, std::string_view a) {
  const Index ia = h.index_of(a);
  check_marker(h, ia);
  const Classifier c(h, ia);
  Enumeration e;
  for (Index v = 0; v < h.size(); ++v) {
    if (v != ia) e.others.push_back(v);
  }
  TypeBuckets b(e.others.size());
  classify_range(c, e, 0, std::uint64_t{1} << e.others.size(), b);
  return finish(b);
}

Totals totals_parallel(const WeightedGraph& h, std::string_view a) {
  const Index ia = h.index_of(a);
  check_marker(h, ia);
  const Classifier c(h, ia);
  Enumeration e;
  for (Index v = 0; v < h.size(); ++v) {
    if (v != ia) e.others.push_back(v);
  }
  const std::size_t n = e.others.size();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const std::int64_t chunks = static_cast<std::int64_t>(std::min<std::uint64_t>(subsets, 64));
  const std::uint64_t per_chunk = (subsets + static_cast<std::uint64_t>(chunks) - 1) / chunks;
  std::vector<TypeBuckets> partial(static_cast<std::size_t>(chunks), TypeBuckets(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < chunks; ++k) {
    const std::uint64_t begin = static_cast<std::uint64_t>(k) * per_chunk;
    try {
      classify_range(c, e, begin, std::min(subsets, begin + per_chunk), partial[static_cast<std::size_t>(k)]);
    } catch (...) {
      errors[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  TypeBuckets merged(n);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < merged.cells.size(); ++i) merged.cells[i] += p.cells[i];
  }
  return finish(merged);
}

CompositionWeights weights_from(Totals t) {
  return {std::move(t.alpha), std::move(t.sums.q1), std::move(t.sums.q3)};
}

}  // namespace

SubsetType subset_type_bordered(const WeightedGraph& h, std::string_view a, std::span<const std::string> s) {
  const Index ia = h.index_of(a);
  if (h.looped(ia)) throw CompositionError("marker '" + std::string(a) + "' is looped");
  const std::uint64_t mask = subset_mask(h, ia, s);
  return Classifier(h, ia).bordered(mask, rank_nullity_mask(h, mask).rank);
}

SubsetType subset_type_local(const WeightedGraph& h, std::string_view a, std::span<const std::string> s) {
  const Index ia = h.index_of(a);
  if (h.looped(ia)) throw CompositionError("marker '" + std::string(a) + "' is looped");
  const std::uint64_t mask = subset_mask(h, ia, s);
  return Classifier(h, ia).by_local(mask, rank_nullity_mask(h, mask).rank);
}

SubsetType subset_type(const WeightedGraph& h, std::string_view a, std::span<const std::string> s) {
  const Index ia = h.index_of(a);
  if (h.looped(ia)) throw CompositionError("marker '" + std::string(a) + "' is looped");
  const std::uint64_t mask = subset_mask(h, ia, s);
  return Classifier(h, ia).classify(mask, rank_nullity_mask(h, mask).rank);
}

namespace serial {

TypeSums type_sums(const WeightedGraph& h, std::string_view a) { return totals_serial(h, a).sums; }

CompositionWeights composition_weights(const WeightedGraph& h, std::string_view a) {
  return weights_from(totals_serial(h, a));
}

}  // namespace serial

TypeSums type_sums(const WeightedGraph& h, std::string_view a) { return totals_parallel(h, a).sums; }

CompositionWeights composition_weights(const WeightedGraph& h, std::string_view a) {
  return weights_from(totals_parallel(h, a));
}

std::string complement_marker(const WeightedGraph& k, std::string_view a) {
  std::string label = std::string(a) + "~c";
  while (k.contains(label)) label += "~";
  return label;
}

Poly q_composed(const WeightedGraph& h, std::string_view a, const WeightedGraph& k) {
  (void)compose(h, k, a);  // validates the shared vertex
  const CompositionWeights w = composition_weights(h, a);
  RecursionOptions opts;
  opts.edgeless_closure = true;
  const Strategy strategy = Strategy::reduce_first();

  Poly total = q_recursive(with_weights(k, a, w.alpha_a, w.beta_a), strategy, opts).value;
  if (!w.beta_ac.is_zero()) {
    const std::string ac = complement_marker(k, a);
    WeightedGraph local = rename_vertex(local_complement(k, a), a, ac);
    local.set_weights(local.index_of(ac), Poly(0), w.beta_ac);
    total += q_recursive(local, strategy, opts).value;
  }
  return total;
}

TypeSumIdentities check_type_sum_identities(const WeightedGraph& h, std::string_view a) {
  const Index ia = h.index_of(a);
  const TypeSums t = type_sums(h, a);
  const Poly xm1 = x_minus_1();
  const Poly ym1 = y_minus_1();
  const Poly xm1_sq = xm1 * xm1;
  const Poly& x = Poly::x();
  const Poly& y = Poly::y();
  const WeightedGraph minus_a = delete_vertex(h, a);
  const Poly q_minus_a = q_expand(minus_a);
  WeightedGraph looped = h;
  looped.set_loop(ia, true);
  const WeightedGraph local_minus_a = delete_vertex(local_complement_at(h, ia), a);

  TypeSumIdentities r;
  r.sum_is_q_minus_a = t.q1 + t.q2 + t.q3 == q_minus_a;
  r.q_h = ym1 * q_expand(h) == y * ym1 * t.q1 + (ym1 + xm1_sq) * t.q2 + x * ym1 * t.q3;
  r.q_h_looped = ym1 * q_expand(looped) == x * ym1 * t.q1 + (ym1 + xm1_sq) * t.q2 + y * ym1 * t.q3;
  r.q_h_local_minus_a = xm1 * ym1 * q_expand(local_minus_a) == xm1 * ym1 * t.q1 + xm1_sq * t.q2 + ym1 * ym1 * t.q3;
  if (is_simple(h)) {
    const Poly alpha = composition_weights(h, a).alpha_a;
    r.simple_alpha = (xm1_sq - ym1 * ym1) * alpha == q_expand(h) - y * q_minus_a;
  }
  return r;
}

}  // namespace interlace
