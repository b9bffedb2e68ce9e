#include "simplexflow/combinations.hpp"

#include <limits>

#include "simplexflow/errors.hpp"

namespace simplexflow {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    // result * (n - k + j) / j stays integral at every step.
    const std::uint64_t factor = n - k + j;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw RuntimeError("binomial coefficient overflows 64 bits");
    }
    result = result * factor / j;
  }
  return result;
}

std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t j = 0; j < k; ++j) {
    const std::uint64_t factor = n - j;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw RuntimeError("falling factorial overflows 64 bits");
    }
    result *= factor;
  }
  return result;
}

std::uint64_t factorial(std::uint64_t n) { return falling_factorial(n, n); }

void unrank_combination(std::uint64_t rank, std::size_t n, std::span<std::size_t> out) {
  const std::size_t k = out.size();
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    // Skip over blocks of combinations that start with a smaller element.
    for (;; ++next) {
      const std::uint64_t block = binomial(n - next - 1, k - slot - 1);
      if (rank < block) break;
      rank -= block;
    }
    out[slot] = next++;
  }
}

bool next_combination(std::span<std::size_t> c, std::size_t n) {
  const std::size_t k = c.size();
  if (k == 0) return false;
  std::size_t pos = k;
  while (pos > 0) {
    --pos;
    if (c[pos] < n - k + pos) {
      ++c[pos];
      for (std::size_t j = pos + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace simplexflow
