#include "oracles.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace oracle {

double gram_volume_squared(const std::vector<Point>& vertices) {
  const auto k = static_cast<Eigen::Index>(vertices.size()) - 1;
  if (k == 0) return 1.0;
  const auto d = static_cast<Eigen::Index>(vertices.front().size());
  Eigen::MatrixXd g(d, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index r = 0; r < d; ++r) g(r, j) = vertices[j + 1][r] - vertices[0][r];
  }
  double fact = 1.0;
  for (Eigen::Index j = 2; j <= k; ++j) fact *= static_cast<double>(j);
  if (k > d) return 0.0;
  // Householder QR: |det R| is the k-volume of the edge parallelotope.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  double vol = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) vol *= std::abs(qr.matrixQR()(j, j));
  vol /= fact;
  return vol * vol;
}

double brute_force_potential(const Configuration& x, std::size_t order, double kappa) {
  const std::size_t n = x.size();
  const std::size_t arity = order + 1;
  std::vector<std::size_t> idx(arity, 0);
  double sum = 0.0;
  while (true) {
    std::vector<Point> v;
    for (auto i : idx) v.emplace_back(x[i].begin(), x[i].end());
    sum += gram_volume_squared(v);
    std::size_t pos = 0;
    while (pos < arity && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == arity) break;
  }
  return kappa * sum / (2.0 * static_cast<double>(arity) * std::pow(double(n), double(order)));
}

Configuration finite_difference_flow(const Configuration& x, std::size_t order, double kappa,
                                     double h) {
  Configuration probe = x;
  Configuration out(x.size(), x.dim());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < x.dim(); ++k) {
      const double orig = x[i][k];
      probe[i][k] = orig + h;
      const double up = brute_force_potential(probe, order, kappa);
      probe[i][k] = orig - h;
      const double down = brute_force_potential(probe, order, kappa);
      probe[i][k] = orig;
      out[i][k] = -(up - down) / (2.0 * h);
    }
  }
  return out;
}

std::vector<double> random_rotation(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = g(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  std::vector<double> out(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) out[r * d + c] = q(r, c);
  }
  return out;
}

Configuration random_configuration(std::size_t n, std::size_t d, std::mt19937_64& rng,
                                   double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  Configuration x(n, d);
  for (auto& v : x.flat()) v = u(rng);
  return x;
}

Configuration random_flat_configuration(std::size_t n, std::size_t d, std::size_t rank,
                                        std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> dirs(rank, Point(d));
  for (auto& dir : dirs) {
    for (auto& v : dir) v = g(rng);
  }
  Point origin(d);
  for (auto& v : origin) v = u(rng);
  Configuration x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = x[i];
    for (std::size_t k = 0; k < d; ++k) row[k] = origin[k];
    for (const auto& dir : dirs) {
      const double a = u(rng);
      for (std::size_t k = 0; k < d; ++k) row[k] += a * dir[k];
    }
  }
  return x;
}

Configuration transform(const Configuration& x, const std::vector<double>& rotation,
                        const Point& shift) {
  const std::size_t d = x.dim();
  Configuration out(x.size(), d);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t r = 0; r < d; ++r) {
      double s = shift.empty() ? 0.0 : shift[r];
      for (std::size_t c = 0; c < d; ++c) s += rotation[r * d + c] * x[i][c];
      out[i][r] = s;
    }
  }
  return out;
}

}  // namespace oracle
