#pragma once

// Sparse interaction sets S of ordered (n+1)-tuples, closed under
// permutation. Storage is canonical: each permutation class is kept once as
// an ascending index set, and the ordered counts are recovered with the
// (n+1)! and n! multipliers. Indices are 0-based in this API; the text
// format in simplexflow/io.hpp is 1-based.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace simplexflow {

using IndexTuple = std::vector<std::size_t>;

class SimplexSet {
 public:
  /// Closes `raw` under all permutations. Every tuple must have arity
  /// order+1, distinct entries, and indices below `particles`.
  static SimplexSet symmetric_closure(std::span<const IndexTuple> raw, std::size_t particles,
                                      std::size_t order);

  /// Every distinct-index (order+1)-tuple over `particles` indices.
  static SimplexSet full_set(std::size_t particles, std::size_t order);

  /// For each base n-tuple, all simplices base + {i} with i outside the base.
  static SimplexSet base_point_set(std::span<const IndexTuple> bases, std::size_t particles);

  std::size_t order() const { return order_; }
  std::size_t particles() const { return particles_; }

  /// Number of unordered simplices.
  std::size_t simplex_count() const { return simplices_.size() / (order_ + 1); }
  /// Vertices of the s-th unordered simplex, ascending.
  std::span<const std::size_t> simplex(std::size_t s) const {
    return {simplices_.data() + s * (order_ + 1), order_ + 1};
  }

  /// |S|: number of ordered tuples.
  std::uint64_t ordered_size() const;

  /// Distinct unordered base n-sets appearing in any neighbourhood.
  std::size_t base_count() const { return bases_.size() / order_; }
  std::span<const std::size_t> base(std::size_t b) const {
    return {bases_.data() + b * order_, order_};
  }

  /// Indices into the base table for S_i, ascending.
  std::span<const std::size_t> neighborhood(std::size_t i) const { return neighborhoods_[i]; }
  /// |S_i|: number of ordered base n-tuples for particle i.
  std::uint64_t neighborhood_size(std::size_t i) const;

  bool operator==(const SimplexSet&) const = default;

 private:
  SimplexSet(std::size_t particles, std::size_t order, std::vector<IndexTuple> sorted_unique);

  std::size_t particles_ = 0;
  std::size_t order_ = 0;
  std::vector<std::size_t> simplices_;
  std::vector<std::size_t> bases_;
  std::vector<std::vector<std::size_t>> neighborhoods_;
};

/// Human-readable problems with S; empty when every S_i is nonempty.
std::vector<std::string> validate(const SimplexSet& set);

/// Ordered tuples of `raw` whose permutation class is incomplete in `raw`.
/// Empty iff `raw` is already closed under permutation.
std::vector<std::string> closure_violations(std::span<const IndexTuple> raw);

}  // namespace simplexflow
