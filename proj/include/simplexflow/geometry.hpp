#pragma once

// Exact-formula geometry on point sets: Cayley-Menger simplex volumes,
// orthogonal projection onto affine hulls and affine-rank estimation.

#include <cstddef>
#include <span>
#include <vector>

#include "simplexflow/configuration.hpp"

namespace simplexflow {

/// Relative cutoff used to drop degenerate directions in affine_chart.
inline constexpr double kChartRankTolerance = 1e-10;
/// Default relative singular-value cutoff for affine_rank.
inline constexpr double kDefaultRankTolerance = 1e-6;

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Ordered, non-owning list of k+1 vertices of equal dimension.
class SimplexVertices {
 public:
  explicit SimplexVertices(std::vector<std::span<const double>> vertices);

  static SimplexVertices of(std::span<const Point> points);
  static SimplexVertices of(const Configuration& config,
                            std::span<const std::size_t> indices);

  std::size_t count() const { return vertices_.size(); }
  /// Simplex order k (number of vertices minus one).
  std::size_t order() const { return vertices_.size() - 1; }
  std::size_t dim() const { return vertices_.front().size(); }
  std::span<const double> operator[](std::size_t j) const { return vertices_[j]; }

 private:
  std::vector<std::span<const double>> vertices_;
};

/// Bordered squared-distance matrix: row/column 0 is (0, 1, ..., 1), the
/// inner block holds ||x_i - x_j||^2. Stored row-major, (k+2) x (k+2).
struct BorderedDistanceMatrix {
  std::size_t extent = 0;
  std::vector<double> entries;

  double operator()(std::size_t r, std::size_t c) const { return entries[r * extent + c]; }
};

BorderedDistanceMatrix bordered_distance_matrix(const SimplexVertices& s);

/// Determinant by LU factorisation with partial pivoting. `m` is row-major
/// n x n and is consumed as scratch space.
double lu_determinant(std::span<double> m, std::size_t n);

/// Squared k-volume from the Cayley-Menger determinant. `raw` is the
/// unclamped formula value; `value` is max(raw, 0).
struct VolumeSquared {
  double value = 0.0;
  double raw = 0.0;
};

VolumeSquared cayley_menger(const SimplexVertices& s);

/// Squared k-dimensional volume of the simplex; 1 for a single vertex.
double volume_squared(const SimplexVertices& s);
double volume_squared(std::span<const Point> vertices);
double volume_squared(const Configuration& config, std::span<const std::size_t> indices);

/// Squared k-volume by the height recursion Vol_k = Vol_{k-1} h_k / k, each
/// height being a Gram-Schmidt residual of the edges from the first vertex.
/// Unlike the determinant, stays accurate for nearly flat simplices, where
/// Cayley-Menger cancellation leaves an error of order eps * diameter^{2k}.
double height_volume_squared(const SimplexVertices& s);
double height_volume_squared(const Configuration& config, std::span<const std::size_t> indices);

/// Heron's formula in squared side lengths, for triangles only.
double heron_area_squared(std::span<const double> a, std::span<const double> b,
                          std::span<const double> c);

/// Affine hull of a point list: base point plus an orthonormal basis of the
/// direction space.
struct AffineChart {
  Point base;
  std::vector<Point> basis;

  std::size_t rank() const { return basis.size(); }
  std::size_t dim() const { return base.size(); }
};

/// Orthonormalises x_j - x_1 against the directions accepted so far; a
/// direction whose residual is below kChartRankTolerance times the largest
/// pairwise distance among the points is dropped.
AffineChart affine_chart(const SimplexVertices& points);
AffineChart affine_chart(std::span<const Point> points);

/// Orthogonal projection of x onto the chart's affine subspace.
Point project(std::span<const double> x, const AffineChart& chart);

/// Number of singular values of the mean-centred N x d position matrix above
/// tol times the largest one and above the roundoff left by centring.
std::size_t affine_rank(const Configuration& config, double tol = kDefaultRankTolerance);

/// Singular values of the centred position matrix, descending.
std::vector<double> centred_singular_values(const Configuration& config);

}  // namespace simplexflow
