#pragma once

#include "interlace/graph.hpp"

#include <string>

namespace testutil {

// Copy of g with vertices renamed prefix0, prefix1, ...
inline interlace::WeightedGraph relabel(const interlace::WeightedGraph& g, const std::string& prefix) {
  interlace::WeightedGraph out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    out.add_vertex(prefix + std::to_string(v), g.looped(v), g.alpha(v), g.beta(v));
  }
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (g.adjacent(u, v)) out.set_edge(u, v, true);
    }
  }
  return out;
}

}  // namespace testutil
