#include "simplexflow/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>


#include "simplexflow/combinations.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/geometry.hpp"
#include "simplexflow/kernels.hpp"

namespace simplexflow {

namespace {

constexpr std::uint64_t kChunk = 4096;

// Sum of Vol_k^2 over all (k+1)-subsets of the configuration. Fixed-size
// chunks are summed independently and combined in chunk order, so the total
// does not depend on the thread count.
double sum_all_volumes_squared(const Configuration& config, std::size_t arity) {
  const std::size_t n = config.size();
  if (arity > n) return 0.0;
  const std::uint64_t total = binomial(n, arity);
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    std::vector<std::size_t> combo(arity);
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    unrank_combination(begin, n, combo);
    double sum = 0.0;
    for (std::uint64_t r = begin; r < end; ++r) {
      sum += height_volume_squared(config, combo);
      next_combination(combo, n);
    }
    partial[c] = sum;
  }

  double total_sum = 0.0;
  for (double p : partial) total_sum += p;
  return total_sum;
}

double max_pairwise_distance(const Configuration& config, std::span<const std::size_t> idx) {
  double best = 0.0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      best = std::max(best, squared_distance(config[idx[a]], config[idx[b]]));
    }
  }
  return std::sqrt(best);
}

}  // namespace

void validate(const ModelParams& params) {
  if (params.order == 0) throw ValidationError("simplex order n must be at least 1");
  if (!(params.kappa >= 0.0) || !std::isfinite(params.kappa)) {
    throw ValidationError("coupling strength kappa must be finite and non-negative");
  }
}

double potential_full(const Configuration& config, const ModelParams& params) {
  validate(params);
  const std::size_t n = params.order;
  const double sum = sum_all_volumes_squared(config, n + 1);
  const double normaliser =
      2.0 * static_cast<double>(n + 1) * std::pow(static_cast<double>(config.size()), n);
  return params.kappa * static_cast<double>(factorial(n + 1)) * sum / normaliser;
}

double potential_reduced(const Configuration& config, const SimplexSet& set,
                         const ModelParams& params) {
  validate(params);
  if (set.order() != params.order) {
    throw ValidationError("simplex set arity " + std::to_string(set.order() + 1) +
                          " does not match n+1 = " + std::to_string(params.order + 1));
  }
  if (set.particles() != config.size()) {
    throw ValidationError("simplex set is for " + std::to_string(set.particles()) +
                          " particles, configuration has " + std::to_string(config.size()));
  }
  if (set.simplex_count() == 0) return 0.0;

  const std::size_t count = set.simplex_count();
  std::vector<double> vols(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(count); ++s) {
    vols[s] = height_volume_squared(config, set.simplex(s));
  }
  double sum = 0.0;
  for (double v : vols) sum += v;

  const std::size_t n = params.order;
  const double ordered = static_cast<double>(set.ordered_size());
  return params.kappa * static_cast<double>(factorial(n + 1)) * sum /
         (2.0 * static_cast<double>(n + 1) * ordered);
}

double potential(const Configuration& config, const ModelParams& params, const SimplexSet* set) {
  if (params.mode == Mode::full) return potential_full(config, params);
  if (set == nullptr) throw ValidationError("reduced mode needs a simplex set");
  return potential_reduced(config, *set, params);
}

Point grad_vol_squared(std::size_t i, std::span<const std::size_t> base,
                       const Configuration& config) {
  if (i >= config.size()) {
    throw ValidationError("particle index " + std::to_string(i) + " out of range");
  }
  if (base.empty()) throw ValidationError("gradient base needs at least one index");
  for (auto j : base) {
    if (j >= config.size()) {
      throw ValidationError("base index " + std::to_string(j) + " out of range");
    }
  }

  Point grad(config.dim(), 0.0);
  if (std::find(base.begin(), base.end(), i) != base.end()) return grad;

  const std::size_t n = base.size();
  const auto vertices = SimplexVertices::of(config, base);
  const double base_volume = volume_squared(vertices);
  if (n > 1) {
    const double scale = max_pairwise_distance(config, base);
    if (base_volume <= kDegenerateBaseTolerance * std::pow(scale, 2.0 * (n - 1))) return grad;
  }

  const auto chart = affine_chart(vertices);
  const auto h = project(config[i], chart);
  const double weight = 2.0 / static_cast<double>(n * n) * base_volume;
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] = weight * (config[i][k] - h[k]);
  return grad;
}

namespace reference {

VelocityField rhs_full(const Configuration& config, const ModelParams& params) {
  validate(params);
  const std::size_t big_n = config.size();
  const std::size_t n = params.order;
  VelocityField out(big_n, config.dim());
  if (n > big_n - 1) return out;

  const double scale = -params.kappa * static_cast<double>(factorial(n)) /
                       (2.0 * std::pow(static_cast<double>(big_n), n));
  std::vector<std::size_t> base(n);
  for (std::size_t i = 0; i < big_n; ++i) {
    auto row = out[i];
    for (std::size_t k = 0; k < n; ++k) base[k] = k;
    do {
      if (std::find(base.begin(), base.end(), i) != base.end()) continue;
      const auto g = grad_vol_squared(i, base, config);
      for (std::size_t k = 0; k < row.size(); ++k) row[k] += g[k];
    } while (next_combination(base, big_n));
    for (auto& v : row) v *= scale;
  }
  return out;
}

VelocityField rhs_reduced(const Configuration& config, const SimplexSet& set,
                          const ModelParams& params) {
  validate(params);
  if (set.order() != params.order || set.particles() != config.size()) {
    throw ValidationError("simplex set does not match the model (n or N differ)");
  }
  VelocityField out(config.size(), config.dim());
  for (std::size_t i = 0; i < config.size(); ++i) {
    const auto nb = set.neighborhood(i);
    if (nb.empty()) throw ValidationError("S_" + std::to_string(i + 1) + " is empty");
    auto row = out[i];
    for (auto b : nb) {
      const auto g = grad_vol_squared(i, set.base(b), config);
      for (std::size_t k = 0; k < row.size(); ++k) row[k] += g[k];
    }
    // Sum over ordered bases = n! x sum over unordered ones.
    const double scale = -params.kappa * static_cast<double>(factorial(params.order)) /
                         (2.0 * static_cast<double>(set.neighborhood_size(i)));
    for (auto& v : row) v *= scale;
  }
  return out;
}

}  // namespace reference

double gradient_check(const Configuration& config, const ModelParams& params, double h) {
  if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
  ModelParams full = params;
  full.mode = Mode::full;
  const auto velocity = rhs_full(config, full);

  Configuration probe = config;
  double worst = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t k = 0; k < config.dim(); ++k) {
      const double original = config[i][k];
      probe[i][k] = original + h;
      const double up = potential_full(probe, full);
      probe[i][k] = original - h;
      const double down = potential_full(probe, full);
      probe[i][k] = original;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = -velocity[i][k];
      worst = std::max(worst, std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic)));
    }
  }
  return worst;
}

}  // namespace simplexflow
