#include "interlace/gf2.hpp"

#include <utility>

namespace interlace::gf2 {

std::size_t rank64(std::span<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    // Pick any nonzero remaining row as pivot, eliminate its lowest bit.
    std::size_t p = rank;
    while (p < rows.size() && rows[p] == 0) ++p;
    if (p == rows.size()) break;
    std::swap(rows[rank], rows[p]);
    const std::uint64_t pivot = rows[rank];
    const std::uint64_t bit = pivot & (~pivot + 1);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r] & bit) rows[r] ^= pivot;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank(std::vector<std::vector<std::uint64_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t words = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t w = 0; w < words && rank < rows.size(); ++w) {
    for (int b = 0; b < 64 && rank < rows.size(); ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      std::size_t p = rank;
      while (p < rows.size() && !(rows[p][w] & bit)) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[rank], rows[p]);
      for (std::size_t r = rank + 1; r < rows.size(); ++r) {
        if (rows[r][w] & bit) {
          for (std::size_t k = w; k < words; ++k) rows[r][k] ^= rows[rank][k];
        }
      }
      ++rank;
    }
  }
  return rank;
}

}  // namespace interlace::gf2
