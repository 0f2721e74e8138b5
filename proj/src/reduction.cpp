#include "interlace/reduction.hpp"

#include <numeric>
#include <sstream>

namespace interlace {

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::Pendant:
      return "pendant";
    case ReductionKind::IdenticalTwin:
      return "identical-twin";
    case ReductionKind::FraternalTwin:
      return "fraternal-twin";
  }
  return "?";
}

bool identical_twins(const WeightedGraph& g, WeightedGraph::Index a, WeightedGraph::Index b) {
  if (a == b) return false;
  const bool loops_ok = (g.looped(a) && g.looped(b) && g.adjacent(a, b)) ||
                        (!g.looped(a) && !g.looped(b) && !g.adjacent(a, b));
  return loops_ok && g.same_outside_neighbors(a, b);
}

bool fraternal_twins(const WeightedGraph& g, WeightedGraph::Index a, WeightedGraph::Index b) {
  if (a == b) return false;
  const bool loops_ok = (g.looped(a) && g.looped(b) && !g.adjacent(a, b)) ||
                        (!g.looped(a) && !g.looped(b) && g.adjacent(a, b));
  return loops_ok && g.same_outside_neighbors(a, b);
}

namespace {

// Sum over subsets S of the class of (prod alpha over S)(prod beta off S)
// times factor(|S|), restricted to sizes accepted by `keep`.
template <typename Keep, typename Factor>
Poly subset_weight_sum(std::span<const VertexWeights> twins, Keep keep, Factor factor) {
  const std::size_t k = twins.size();
  if (k >= 63) throw ReductionError("twin class too large");
  // by_size[s] = sum over |S| = s of the weight products (elementary
  // symmetric style accumulation, avoids 2^k enumeration).
  std::vector<Poly> by_size(k + 1);
  by_size[0] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t s = i + 2; s-- > 0;) {
      Poly next = by_size[s] * twins[i].beta;
      if (s > 0) next += by_size[s - 1] * twins[i].alpha;
      by_size[s] = std::move(next);
    }
  }
  Poly total;
  for (std::size_t s = 0; s <= k; ++s) {
    if (keep(s) && !by_size[s].is_zero()) total += by_size[s] * factor(s);
  }
  return total;
}

}  // namespace

VertexWeights identical_twin_weights(std::span<const VertexWeights> twins) {
  if (twins.size() < 2) throw ReductionError("twin reduction needs at least two vertices");
  Poly alpha = subset_weight_sum(
      twins, [](std::size_t s) { return s >= 1; },
      [](std::size_t s) { return y_minus_1().pow(static_cast<std::uint32_t>(s - 1)); });
  Poly beta = 1;
  for (const auto& t : twins) beta *= t.beta;
  return {std::move(alpha), std::move(beta)};
}

VertexWeights fraternal_twin_weights(std::span<const VertexWeights> twins) {
  if (twins.size() < 2) throw ReductionError("twin reduction needs at least two vertices");
  Poly alpha = subset_weight_sum(
      twins, [](std::size_t s) { return s % 2 == 1; },
      [](std::size_t s) { return x_minus_1().pow(static_cast<std::uint32_t>(s - 1)); });
  Poly beta = subset_weight_sum(
      twins, [](std::size_t s) { return s % 2 == 0; },
      [](std::size_t s) { return x_minus_1().pow(static_cast<std::uint32_t>(s)); });
  return {std::move(alpha), std::move(beta)};
}

VertexWeights pendant_weights(const VertexWeights& a, const VertexWeights& b) {
  Poly xm1_sq = x_minus_1() * x_minus_1();
  return {a.alpha * b.beta, a.alpha * b.alpha * xm1_sq + a.beta * b.alpha * y_minus_1() + a.beta * b.beta};
}

namespace {

WeightedGraph twin_reduce(const WeightedGraph& g, std::span<const std::string> twins, ReductionKind kind) {
  if (twins.size() < 2) throw ReductionError("twin reduction needs at least two vertices");
  std::vector<WeightedGraph::Index> idx;
  for (const auto& t : twins) idx.push_back(g.index_of(t));
  for (std::size_t p = 0; p < idx.size(); ++p) {
    for (std::size_t q = p + 1; q < idx.size(); ++q) {
      if (idx[p] == idx[q]) throw ReductionError("vertex '" + twins[p] + "' listed twice");
      const bool ok = kind == ReductionKind::IdenticalTwin ? identical_twins(g, idx[p], idx[q])
                                                           : fraternal_twins(g, idx[p], idx[q]);
      if (!ok) {
        std::string why;
        if (!g.same_outside_neighbors(idx[p], idx[q])) {
          why = "neighborhoods outside the pair differ";
        } else if (g.looped(idx[p]) != g.looped(idx[q])) {
          why = "exactly one of them is looped";
        } else {
          why = g.adjacent(idx[p], idx[q]) ? "adjacency does not match their loop status (adjacent)"
                                           : "adjacency does not match their loop status (non-adjacent)";
        }
        throw ReductionError("'" + twins[p] + "' and '" + twins[q] + "' are not " +
                             std::string(to_string(kind)) + "s: " + why);
      }
    }
  }
  std::vector<VertexWeights> w;
  for (auto i : idx) w.push_back({g.alpha(i), g.beta(i)});
  VertexWeights merged =
      kind == ReductionKind::IdenticalTwin ? identical_twin_weights(w) : fraternal_twin_weights(w);
  WeightedGraph out = g;
  out.set_weights(idx[0], std::move(merged.alpha), std::move(merged.beta));
  return delete_vertices_at(out, std::span(idx).subspan(1));
}

}  // namespace

WeightedGraph identical_twin_reduce(const WeightedGraph& g, std::span<const std::string> twins) {
  return twin_reduce(g, twins, ReductionKind::IdenticalTwin);
}

WeightedGraph fraternal_twin_reduce(const WeightedGraph& g, std::span<const std::string> twins) {
  return twin_reduce(g, twins, ReductionKind::FraternalTwin);
}

WeightedGraph pendant_reduce(const WeightedGraph& g, std::string_view a, std::string_view b) {
  const auto ia = g.index_of(a);
  const auto ib = g.index_of(b);
  if (ia == ib) throw ReductionError("pendant and anchor must differ");
  if (g.looped(ib)) throw ReductionError("pendant vertex '" + std::string(b) + "' is looped");
  if (g.degree(ib) != 1 || !g.adjacent(ia, ib)) {
    throw ReductionError("'" + std::string(b) + "' is not a degree-one vertex pendant on '" + std::string(a) + "'");
  }
  VertexWeights w = pendant_weights({g.alpha(ia), g.beta(ia)}, {g.alpha(ib), g.beta(ib)});
  WeightedGraph out = g;
  out.set_weights(ia, std::move(w.alpha), std::move(w.beta));
  return delete_vertices_at(out, std::span(&ib, 1));
}

std::optional<ReductionStep> find_reduction(const WeightedGraph& g, const ReductionScan& scan) {
  std::vector<WeightedGraph::Index> order = scan.vertex_order;
  if (order.empty()) {
    order.resize(g.size());
    std::iota(order.begin(), order.end(), 0);
  } else if (order.size() != g.size()) {
    throw ReductionError("scan order is not a permutation of the vertices");
  }

  for (ReductionKind kind : scan.kind_order) {
    if (kind == ReductionKind::FraternalTwin && !scan.allow_fraternal) continue;
    if (kind == ReductionKind::Pendant) {
      for (auto b : order) {
        if (g.looped(b) || g.degree(b) != 1) continue;
        auto a = g.neighbors(b).front();
        VertexWeights w = pendant_weights({g.alpha(a), g.beta(a)}, {g.alpha(b), g.beta(b)});
        return ReductionStep{kind, g.label(a), {g.label(b)}, std::move(w.alpha), std::move(w.beta)};
      }
      continue;
    }
    for (std::size_t p = 0; p < order.size(); ++p) {
      for (std::size_t q = p + 1; q < order.size(); ++q) {
        const auto a = order[p];
        const auto b = order[q];
        const bool hit = kind == ReductionKind::IdenticalTwin ? identical_twins(g, a, b) : fraternal_twins(g, a, b);
        if (!hit) continue;
        const VertexWeights pair[2] = {{g.alpha(a), g.beta(a)}, {g.alpha(b), g.beta(b)}};
        VertexWeights w =
            kind == ReductionKind::IdenticalTwin ? identical_twin_weights(pair) : fraternal_twin_weights(pair);
        return ReductionStep{kind, g.label(a), {g.label(b)}, std::move(w.alpha), std::move(w.beta)};
      }
    }
  }
  return std::nullopt;
}

WeightedGraph apply_reduction(const WeightedGraph& g, const ReductionStep& step) {
  WeightedGraph out = g;
  out.set_weights(g.index_of(step.survivor), step.alpha, step.beta);
  std::vector<WeightedGraph::Index> drop;
  for (const auto& r : step.removed) drop.push_back(g.index_of(r));
  return delete_vertices_at(out, drop);
}

std::string ReductionTrace::to_text() const {
  std::ostringstream out;
  for (const auto& s : steps) {
    out << to_string(s.kind) << " removed=";
    for (std::size_t i = 0; i < s.removed.size(); ++i) out << (i ? "," : "") << s.removed[i];
    out << " survivor=" << s.survivor << " alpha=" << s.alpha.to_string() << " beta=" << s.beta.to_string()
        << '\n';
  }
  return out.str();
}

ReductionTrace reduce_fully(const WeightedGraph& g, const ReductionScan& scan) {
  ReductionTrace trace{{}, g};
  ReductionScan current = scan;
  while (true) {
    if (!scan.vertex_order.empty()) {
      // Keep the caller's relative order for the surviving vertices.
      current.vertex_order.clear();
      for (auto i : scan.vertex_order) {
        if (auto j = trace.terminal.find(g.label(i))) current.vertex_order.push_back(*j);
      }
    }
    auto step = find_reduction(trace.terminal, current);
    if (!step) break;
    trace.terminal = apply_reduction(trace.terminal, *step);
    trace.steps.push_back(std::move(*step));
  }
  return trace;
}

Poly edgeless_closure(const WeightedGraph& g) {
  if (g.has_non_loop_edges()) throw GraphError("closed product needs a graph without non-loop edges");
  Poly q = 1;
  for (std::size_t v = 0; v < g.size(); ++v) {
    q *= g.alpha(v) * (g.looped(v) ? x_minus_1() : y_minus_1()) + g.beta(v);
  }
  return q;
}

std::optional<Poly> closed_form_q(const ReductionTrace& trace) {
  if (!trace.reduced_to_edgeless()) return std::nullopt;
  return edgeless_closure(trace.terminal);
}

}  // namespace interlace
