#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace interlace::gf2 {

// Rank of a matrix over GF(2) with at most 64 columns, one row per word.
// The rows are consumed (reduced in place).
std::size_t rank64(std::span<std::uint64_t> rows);

// Multi-word variant: rows[i] holds ceil(cols/64) words, little-endian bits.
std::size_t rank(std::vector<std::vector<std::uint64_t>> rows);

}  // namespace interlace::gf2
