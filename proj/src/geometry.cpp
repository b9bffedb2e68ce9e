#include "simplexflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "simplexflow/errors.hpp"

namespace simplexflow {

namespace {

void require_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ValidationError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

SimplexVertices::SimplexVertices(std::vector<std::span<const double>> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ValidationError("simplex needs at least one vertex");
  for (const auto& v : vertices_) require_same_dim(vertices_.front(), v);
}

SimplexVertices SimplexVertices::of(std::span<const Point> points) {
  std::vector<std::span<const double>> views(points.begin(), points.end());
  return SimplexVertices(std::move(views));
}

SimplexVertices SimplexVertices::of(const Configuration& config,
                                    std::span<const std::size_t> indices) {
  std::vector<std::span<const double>> views;
  views.reserve(indices.size());
  for (auto idx : indices) {
    if (idx >= config.size()) {
      throw ValidationError("particle index " + std::to_string(idx) + " out of range");
    }
    views.push_back(config[idx]);
  }
  return SimplexVertices(std::move(views));
}

BorderedDistanceMatrix bordered_distance_matrix(const SimplexVertices& s) {
  const std::size_t m = s.count() + 1;
  BorderedDistanceMatrix b{m, std::vector<double>(m * m, 0.0)};
  for (std::size_t j = 1; j < m; ++j) {
    b.entries[j] = 1.0;
    b.entries[j * m] = 1.0;
  }
  for (std::size_t i = 0; i < s.count(); ++i) {
    for (std::size_t j = i + 1; j < s.count(); ++j) {
      const double d2 = squared_distance(s[i], s[j]);
      b.entries[(i + 1) * m + (j + 1)] = d2;
      b.entries[(j + 1) * m + (i + 1)] = d2;
    }
  }
  return b;
}

namespace {

template <class T>
T lu_determinant_impl(std::span<T> m, std::size_t n) {
  T det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    T best = std::abs(m[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T v = std::abs(m[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[col * n + c], m[pivot * n + c]);
      det = -det;
    }
    const T diag = m[col * n + col];
    det *= diag;
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = m[r * n + col] / diag;
      if (factor == 0) continue;
      for (std::size_t c = col + 1; c < n; ++c) m[r * n + c] -= factor * m[col * n + c];
    }
  }
  return det;
}

// Distances from exact double inputs, carried in extended precision so the
// cancellation in the determinant eats the extra bits, not the result.
long double wide_squared_distance(std::span<const double> a, std::span<const double> b) {
  long double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const long double diff = static_cast<long double>(a[k]) - b[k];
    s += diff * diff;
  }
  return s;
}

}  // namespace

double lu_determinant(std::span<double> m, std::size_t n) { return lu_determinant_impl(m, n); }

VolumeSquared cayley_menger(const SimplexVertices& s) {
  const std::size_t k = s.order();
  if (k == 0) return {1.0, 1.0};
  const std::size_t m = k + 2;
  std::vector<long double> b(m * m, 0.0L);
  for (std::size_t j = 1; j < m; ++j) {
    b[j] = 1;
    b[j * m] = 1;
  }
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = i + 1; j <= k; ++j) {
      const long double d2 = wide_squared_distance(s[i], s[j]);
      b[(i + 1) * m + (j + 1)] = d2;
      b[(j + 1) * m + (i + 1)] = d2;
    }
  }
  const long double det = lu_determinant_impl(std::span<long double>(b), m);
  // (-1)^{k+1} / (2^k (k!)^2)
  long double denom = std::ldexp(1.0L, static_cast<int>(k));
  long double factorial = 1;
  for (std::size_t j = 2; j <= k; ++j) factorial *= static_cast<long double>(j);
  denom *= factorial * factorial;
  const long double sign = (k % 2 == 1) ? 1 : -1;
  const double raw = static_cast<double>(sign * det / denom);
  return {std::max(raw, 0.0), raw};
}

double volume_squared(const SimplexVertices& s) { return cayley_menger(s).value; }

double volume_squared(std::span<const Point> vertices) {
  return volume_squared(SimplexVertices::of(vertices));
}

double volume_squared(const Configuration& config, std::span<const std::size_t> indices) {
  return volume_squared(SimplexVertices::of(config, indices));
}

double height_volume_squared(const SimplexVertices& s) {
  const std::size_t k = s.order();
  const std::size_t d = s.dim();
  for (std::size_t j = 1; j <= k; ++j) {
    if (s[j].size() != d) throw ValidationError("simplex vertices have different dimensions");
  }
  if (k > d) return 0.0;
  std::vector<double> basis(k * d);
  double volume = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    double* e = basis.data() + (j - 1) * d;
    for (std::size_t c = 0; c < d; ++c) e[c] = s[j][c] - s[0][c];
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t m = 0; m + 1 < j; ++m) {
        const double* f = basis.data() + m * d;
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += e[c] * f[c];
        for (std::size_t c = 0; c < d; ++c) e[c] -= dot * f[c];
      }
    }
    double norm = 0.0;
    for (std::size_t c = 0; c < d; ++c) norm += e[c] * e[c];
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t c = 0; c < d; ++c) e[c] /= norm;
    volume *= norm / static_cast<double>(j);
  }
  return volume * volume;
}

double height_volume_squared(const Configuration& config, std::span<const std::size_t> indices) {
  return height_volume_squared(SimplexVertices::of(config, indices));
}

double heron_area_squared(std::span<const double> a, std::span<const double> b,
                          std::span<const double> c) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  const long double d12 = wide_squared_distance(a, b);
  const long double d23 = wide_squared_distance(b, c);
  const long double d31 = wide_squared_distance(c, a);
  const long double value = -(d12 * d12 + d23 * d23 + d31 * d31 - 2 * d12 * d23 -
                              2 * d23 * d31 - 2 * d31 * d12) /
                            16;
  return std::max(static_cast<double>(value), 0.0);
}

AffineChart affine_chart(const SimplexVertices& points) {
  AffineChart chart;
  chart.base.assign(points[0].begin(), points[0].end());
  const std::size_t d = points.dim();

  double scale = 0.0;
  for (std::size_t i = 0; i < points.count(); ++i) {
    for (std::size_t j = i + 1; j < points.count(); ++j) {
      scale = std::max(scale, std::sqrt(squared_distance(points[i], points[j])));
    }
  }
  if (scale == 0.0) return chart;
  const double cutoff = kChartRankTolerance * scale;

  Point residual(d);
  for (std::size_t j = 1; j < points.count() && chart.rank() < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) residual[k] = points[j][k] - chart.base[k];
    // Two Gram-Schmidt sweeps keep the basis orthonormal to working precision.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto& e : chart.basis) {
        const double c = dot(residual, e);
        for (std::size_t k = 0; k < d; ++k) residual[k] -= c * e[k];
      }
    }
    const double norm = std::sqrt(dot(residual, residual));
    if (norm <= cutoff) continue;
    for (auto& v : residual) v /= norm;
    chart.basis.push_back(residual);
  }
  return chart;
}

AffineChart affine_chart(std::span<const Point> points) {
  return affine_chart(SimplexVertices::of(points));
}

Point project(std::span<const double> x, const AffineChart& chart) {
  require_same_dim(x, chart.base);
  Point offset(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) offset[k] = x[k] - chart.base[k];
  Point h = chart.base;
  for (const auto& e : chart.basis) {
    const double c = dot(offset, e);
    for (std::size_t k = 0; k < x.size(); ++k) h[k] += c * e[k];
  }
  return h;
}

std::vector<double> centred_singular_values(const Configuration& config) {
  const auto n = static_cast<Eigen::Index>(config.size());
  const auto d = static_cast<Eigen::Index>(config.dim());
  Eigen::MatrixXd centred(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) centred(i, k) = config[i][k];
  }
  centred.rowwise() -= centred.colwise().mean();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centred);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

std::size_t affine_rank(const Configuration& config, double tol) {
  if (!(tol > 0.0)) throw ValidationError("affine_rank tolerance must be positive");
  const auto sv = centred_singular_values(config);
  if (sv.empty()) return 0;
  // Centring leaves roundoff of order eps * |x|; spread below that is zero.
  double magnitude = 0.0;
  for (double v : config.flat()) magnitude += v * v;
  const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(magnitude);
  if (sv.front() <= noise) return 0;
  const double cutoff = std::max(tol * sv.front(), noise);
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cutoff](double s) { return s > cutoff; }));
}

}  // namespace simplexflow
