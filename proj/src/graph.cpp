#include "interlace/graph.hpp"

#include "interlace/gf2.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>

namespace interlace {

std::optional<WeightedGraph::Index> WeightedGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WeightedGraph::Index WeightedGraph::index_of(std::string_view label) const {
  auto i = find(label);
  if (!i) throw GraphError("unknown vertex '" + std::string(label) + "'");
  return *i;
}

WeightedGraph::Index WeightedGraph::add_vertex(std::string label, bool looped, Poly alpha, Poly beta) {
  if (label.empty()) throw GraphError("empty vertex label");
  if (index_.count(label)) throw GraphError("duplicate vertex '" + label + "'");
  const Index i = labels_.size();
  index_.emplace(label, i);
  labels_.push_back(std::move(label));
  const std::size_t w = words();
  for (auto& row : adj_) row.resize(w, 0);
  adj_.emplace_back(w, 0);
  loops_.push_back(looped);
  alpha_.push_back(std::move(alpha));
  beta_.push_back(std::move(beta));
  return i;
}

void WeightedGraph::add_edge(std::string_view a, std::string_view b) {
  Index i = index_of(a);
  Index j = index_of(b);
  if (i == j) throw GraphError("self-edge on '" + std::string(a) + "'; use a loop flag instead");
  set_edge(i, j, true);
}

void WeightedGraph::set_edge(Index i, Index j, bool on) {
  if (i == j) throw GraphError("adjacency is irreflexive; loops are stored separately");
  const std::uint64_t bj = std::uint64_t{1} << (j % 64);
  const std::uint64_t bi = std::uint64_t{1} << (i % 64);
  if (on) {
    adj_[i][j / 64] |= bj;
    adj_[j][i / 64] |= bi;
  } else {
    adj_[i][j / 64] &= ~bj;
    adj_[j][i / 64] &= ~bi;
  }
}

void WeightedGraph::toggle_edge(Index i, Index j) { set_edge(i, j, !adjacent(i, j)); }

std::vector<WeightedGraph::Index> WeightedGraph::neighbors(Index i) const {
  std::vector<Index> out;
  const auto& row = adj_[i];
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t WeightedGraph::degree(Index i) const {
  std::size_t d = 0;
  for (auto w : adj_[i]) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

bool WeightedGraph::same_outside_neighbors(Index i, Index j) const {
  const auto& a = adj_[i];
  const auto& b = adj_[j];
  for (std::size_t w = 0; w < a.size(); ++w) {
    std::uint64_t mask = ~std::uint64_t{0};
    if (i / 64 == w) mask &= ~(std::uint64_t{1} << (i % 64));
    if (j / 64 == w) mask &= ~(std::uint64_t{1} << (j % 64));
    if ((a[w] & mask) != (b[w] & mask)) return false;
  }
  return true;
}

void WeightedGraph::set_weights(Index i, Poly alpha, Poly beta) {
  alpha_[i] = std::move(alpha);
  beta_[i] = std::move(beta);
}

bool WeightedGraph::has_non_loop_edges() const {
  return std::any_of(adj_.begin(), adj_.end(), [](const auto& row) {
    return std::any_of(row.begin(), row.end(), [](std::uint64_t w) { return w != 0; });
  });
}

bool WeightedGraph::has_loops() const {
  return std::find(loops_.begin(), loops_.end(), true) != loops_.end();
}

bool WeightedGraph::is_unweighted() const {
  for (Index i = 0; i < size(); ++i) {
    if (!alpha_[i].is_one() || !beta_[i].is_one()) return false;
  }
  return true;
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t total = 0;
  for (Index i = 0; i < size(); ++i) total += degree(i);
  return total / 2;
}

std::uint64_t WeightedGraph::row64(Index i) const {
  std::uint64_t r = adj_[i].empty() ? 0 : adj_[i][0];
  if (loops_[i] && i < 64) r |= std::uint64_t{1} << i;
  return r;
}

bool WeightedGraph::operator==(const WeightedGraph& o) const {
  return labels_ == o.labels_ && adj_ == o.adj_ && loops_ == o.loops_ && alpha_ == o.alpha_ &&
         beta_ == o.beta_;
}

// ---------------------------------------------------------------------------

RankNullity rank_nullity_at(const WeightedGraph& g, std::span<const WeightedGraph::Index> subset) {
  const std::size_t k = subset.size();
  if (k == 0) return {};
  for (auto i : subset) {
    if (i >= g.size()) throw GraphError("vertex index out of range");
  }
  // Compress G[S] into k columns.
  const std::size_t words = (k + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(k, std::vector<std::uint64_t>(words, 0));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      bool bit = r == c ? g.looped(subset[r]) : g.adjacent(subset[r], subset[c]);
      if (bit) rows[r][c / 64] |= std::uint64_t{1} << (c % 64);
    }
  }
  std::size_t rank = 0;
  if (k <= 64) {
    std::vector<std::uint64_t> flat(k);
    for (std::size_t r = 0; r < k; ++r) flat[r] = rows[r][0];
    rank = gf2::rank64(flat);
  } else {
    rank = gf2::rank(std::move(rows));
  }
  return {rank, k - rank};
}

RankNullity rank_nullity(const WeightedGraph& g, std::span<const std::string> subset) {
  std::vector<WeightedGraph::Index> idx;
  idx.reserve(subset.size());
  for (const auto& s : subset) idx.push_back(g.index_of(s));
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) {
    throw GraphError("vertex subset lists a vertex twice");
  }
  return rank_nullity_at(g, idx);
}

RankNullity rank_nullity_mask(const WeightedGraph& g, std::uint64_t subset) {
  if (g.size() > 64) throw GraphError("mask rank requires at most 64 vertices");
  std::uint64_t rows[64];
  std::size_t k = 0;
  for (std::uint64_t bits = subset; bits; bits &= bits - 1) {
    auto i = static_cast<std::size_t>(std::countr_zero(bits));
    rows[k++] = g.row64(i) & subset;
  }
  std::size_t rank = gf2::rank64(std::span(rows, k));
  return {rank, k - rank};
}

WeightedGraph local_complement_at(const WeightedGraph& g, WeightedGraph::Index a) {
  WeightedGraph out = g;
  auto nbrs = g.neighbors(a);
  for (std::size_t p = 0; p < nbrs.size(); ++p) {
    out.toggle_loop(nbrs[p]);
    for (std::size_t q = p + 1; q < nbrs.size(); ++q) out.toggle_edge(nbrs[p], nbrs[q]);
  }
  return out;
}

WeightedGraph local_complement(const WeightedGraph& g, std::string_view a) {
  return local_complement_at(g, g.index_of(a));
}

namespace {
std::atomic<int> pivot_faults{0};
}  // namespace

namespace fault {
ScopedPivotFault::ScopedPivotFault() { ++pivot_faults; }
ScopedPivotFault::~ScopedPivotFault() { --pivot_faults; }
}  // namespace fault

WeightedGraph pivot_at(const WeightedGraph& g, WeightedGraph::Index a, WeightedGraph::Index b) {
  if (a == b) throw GraphError("pivot needs two distinct vertices");
  WeightedGraph out = g;
  if (pivot_faults.load() > 0) return out;
  const std::size_t n = g.size();
  // Toggle {u, w} (u != w, both outside {a, b}) when one of them neighbors a,
  // the other neighbors b, and that labeling is not of two common neighbors.
  for (std::size_t u = 0; u < n; ++u) {
    if (u == a || u == b) continue;
    for (std::size_t w = u + 1; w < n; ++w) {
      if (w == a || w == b) continue;
      auto eligible = [&](std::size_t s, std::size_t t) {
        return g.adjacent(s, a) && g.adjacent(t, b) && (!g.adjacent(s, b) || !g.adjacent(t, a));
      };
      if (eligible(u, w) || eligible(w, u)) out.toggle_edge(u, w);
    }
  }
  return out;
}

WeightedGraph pivot(const WeightedGraph& g, std::string_view a, std::string_view b) {
  return pivot_at(g, g.index_of(a), g.index_of(b));
}

WeightedGraph complement(const WeightedGraph& g) {
  WeightedGraph out = g;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.toggle_loop(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) out.toggle_edge(i, j);
  }
  return out;
}

WeightedGraph disjoint_union(const WeightedGraph& g1, const WeightedGraph& g2) {
  WeightedGraph out = g1;
  for (std::size_t i = 0; i < g2.size(); ++i) {
    if (out.contains(g2.label(i))) throw GraphError("label collision on '" + g2.label(i) + "'");
    out.add_vertex(g2.label(i), g2.looped(i), g2.alpha(i), g2.beta(i));
  }
  const std::size_t base = g1.size();
  for (std::size_t i = 0; i < g2.size(); ++i) {
    for (auto j : g2.neighbors(i)) {
      if (i < j) out.set_edge(base + i, base + j, true);
    }
  }
  return out;
}

WeightedGraph join(const WeightedGraph& g1, const WeightedGraph& g2) {
  WeightedGraph out = disjoint_union(g1, g2);
  for (std::size_t i = 0; i < g1.size(); ++i) {
    for (std::size_t j = 0; j < g2.size(); ++j) out.set_edge(i, g1.size() + j, true);
  }
  return out;
}

WeightedGraph induced_subgraph_at(const WeightedGraph& g, std::span<const WeightedGraph::Index> keep) {
  std::vector<WeightedGraph::Index> order(keep.begin(), keep.end());
  std::sort(order.begin(), order.end());
  WeightedGraph out;
  for (auto i : order) out.add_vertex(g.label(i), g.looped(i), g.alpha(i), g.beta(i));
  for (std::size_t p = 0; p < order.size(); ++p) {
    for (std::size_t q = p + 1; q < order.size(); ++q) {
      if (g.adjacent(order[p], order[q])) out.set_edge(p, q, true);
    }
  }
  return out;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const std::string> subset) {
  std::vector<WeightedGraph::Index> keep;
  keep.reserve(subset.size());
  for (const auto& s : subset) keep.push_back(g.index_of(s));
  return induced_subgraph_at(g, keep);
}

WeightedGraph delete_vertices_at(const WeightedGraph& g, std::span<const WeightedGraph::Index> drop) {
  std::vector<bool> gone(g.size(), false);
  for (auto d : drop) gone.at(d) = true;
  std::vector<WeightedGraph::Index> keep;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!gone[i]) keep.push_back(i);
  }
  return induced_subgraph_at(g, keep);
}

WeightedGraph delete_vertex(const WeightedGraph& g, std::string_view a) {
  WeightedGraph::Index i = g.index_of(a);
  return delete_vertices_at(g, std::span(&i, 1));
}

WeightedGraph unweighted(const WeightedGraph& g) {
  WeightedGraph out = g;
  for (std::size_t i = 0; i < g.size(); ++i) out.set_weights(i, 1, 1);
  return out;
}

WeightedGraph with_weights(const WeightedGraph& g, std::string_view a, Poly alpha, Poly beta) {
  WeightedGraph out = g;
  out.set_weights(g.index_of(a), std::move(alpha), std::move(beta));
  return out;
}

WeightedGraph rename_vertex(const WeightedGraph& g, std::string_view from, std::string to) {
  const auto target = g.index_of(from);
  if (g.label(target) != to && g.contains(to)) throw GraphError("vertex '" + to + "' already exists");
  WeightedGraph out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.add_vertex(i == target ? to : g.label(i), g.looped(i), g.alpha(i), g.beta(i));
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g.adjacent(i, j)) out.set_edge(i, j, true);
    }
  }
  return out;
}

std::vector<std::vector<WeightedGraph::Index>> connected_components(const WeightedGraph& g) {
  std::vector<std::vector<WeightedGraph::Index>> comps;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<WeightedGraph::Index> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto v : g.neighbors(comp[head])) {
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_simple(const WeightedGraph& g) { return !g.has_loops(); }

namespace {

WeightedGraph labelled_vertices(std::size_t n, std::string_view prefix) {
  WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(std::string(prefix) + std::to_string(i));
  return g;
}

}  // namespace

WeightedGraph edgeless_graph(std::size_t n, std::string_view prefix) { return labelled_vertices(n, prefix); }

WeightedGraph complete_graph(std::size_t n, std::string_view prefix) {
  WeightedGraph g = labelled_vertices(n, prefix);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge(i, j, true);
  }
  return g;
}

WeightedGraph path_graph(std::size_t n, std::string_view prefix) {
  WeightedGraph g = labelled_vertices(n, prefix);
  for (std::size_t i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, true);
  return g;
}

WeightedGraph cycle_graph(std::size_t n, std::string_view prefix) {
  WeightedGraph g = path_graph(n, prefix);
  if (n >= 3) g.set_edge(0, n - 1, true);
  return g;
}

}  // namespace interlace
