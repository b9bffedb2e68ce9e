#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace simplexflow {

/// C(n, k); throws RuntimeError on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// n! / (n-k)!, the number of ordered k-tuples of distinct indices.
std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k);

std::uint64_t factorial(std::uint64_t n);

/// Writes the rank-th k-subset of {0..n-1} in lexicographic order into `out`
/// (ascending indices, out.size() == k).
void unrank_combination(std::uint64_t rank, std::size_t n, std::span<std::size_t> out);

/// Advances `c` to the lexicographically next k-subset of {0..n-1}.
/// Returns false (leaving `c` unspecified) when `c` was the last one.
bool next_combination(std::span<std::size_t> c, std::size_t n);

}  // namespace simplexflow
