#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace simplexflow {

using Point = std::vector<double>;

/// Dense row-major N x d block of reals; row i belongs to particle i.
/// The tag keeps positions and velocities from being mixed up.
template <class Tag>
class RowBlock {
 public:
  RowBlock() = default;

  /// Zero-filled block. Both extents must be positive.
  RowBlock(std::size_t rows, std::size_t cols);

  /// Takes ownership of `values` (row-major, rows*cols entries, all finite).
  RowBlock(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t size() const { return rows_; }
  std::size_t dim() const { return cols_; }

  std::span<const double> operator[](std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> operator[](std::size_t i) {
    return {values_.data() + i * cols_, cols_};
  }

  std::span<const double> flat() const { return values_; }
  std::span<double> flat() { return values_; }

  bool operator==(const RowBlock&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct PositionTag;
struct VelocityTag;

/// Particle positions X = (x_1, ..., x_N), x_i in R^d.
using Configuration = RowBlock<PositionTag>;
/// Right-hand side of the flow, one row per particle.
using VelocityField = RowBlock<VelocityTag>;

/// Builds a configuration from a list of equal-length points.
Configuration make_configuration(std::span<const Point> points);

/// Index of the first row holding a NaN/Inf entry, or size() if none.
template <class Tag>
std::size_t first_non_finite_row(const RowBlock<Tag>& block);

extern template class RowBlock<PositionTag>;
extern template class RowBlock<VelocityTag>;

}  // namespace simplexflow
