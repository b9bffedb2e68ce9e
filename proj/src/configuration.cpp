#include "simplexflow/configuration.hpp"

#include <cmath>
#include <string>

#include "simplexflow/errors.hpp"

namespace simplexflow {

template <class Tag>
RowBlock<Tag>::RowBlock(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0) {
    throw ValidationError("row block needs at least one row and one column");
  }
}

template <class Tag>
RowBlock<Tag>::RowBlock(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows == 0 || cols == 0) {
    throw ValidationError("row block needs at least one row and one column");
  }
  if (values_.size() != rows * cols) {
    throw ValidationError("row block expects " + std::to_string(rows * cols) +
                          " values, got " + std::to_string(values_.size()));
  }
  if (const auto bad = first_non_finite_row(*this); bad != rows_) {
    throw ValidationError("non-finite entry in row " + std::to_string(bad));
  }
}

template <class Tag>
std::size_t first_non_finite_row(const RowBlock<Tag>& block) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    for (double v : block[i]) {
      if (!std::isfinite(v)) return i;
    }
  }
  return block.size();
}

Configuration make_configuration(std::span<const Point> points) {
  if (points.empty()) throw ValidationError("configuration needs at least one point");
  const std::size_t d = points.front().size();
  std::vector<double> values;
  values.reserve(points.size() * d);
  for (const auto& p : points) {
    if (p.size() != d) throw ValidationError("points have mismatched dimensions");
    values.insert(values.end(), p.begin(), p.end());
  }
  return Configuration(points.size(), d, std::move(values));
}

template class RowBlock<PositionTag>;
template class RowBlock<VelocityTag>;
template std::size_t first_non_finite_row(const RowBlock<PositionTag>&);
template std::size_t first_non_finite_row(const RowBlock<VelocityTag>&);

}  // namespace simplexflow
