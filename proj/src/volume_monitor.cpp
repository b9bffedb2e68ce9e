#include "simplexflow/volume_monitor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "simplexflow/combinations.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/geometry.hpp"

namespace simplexflow {

VolumeMonitor VolumeMonitor::combinations(std::size_t particles, std::size_t order,
                                          std::size_t budget, std::uint64_t seed) {
  if (order == 0) throw ValidationError("simplex order must be at least 1");
  if (particles < order + 1) {
    throw ValidationError("volume monitor needs at least n+1 particles");
  }
  if (budget == 0) throw ValidationError("volume sample budget must be positive");
  VolumeMonitor m;
  m.order_ = order;
  const std::size_t arity = order + 1;

  // C(N, n+1) can overflow for large runs; that only means "sample".
  std::uint64_t total = 0;
  bool enumerate = false;
  try {
    total = binomial(particles, arity);
    enumerate = total <= budget;
  } catch (const RuntimeError&) {
  }

  if (enumerate) {
    m.indices_.reserve(total * arity);
    std::vector<std::size_t> c(arity);
    for (std::size_t k = 0; k < arity; ++k) c[k] = k;
    do {
      m.indices_.insert(m.indices_.end(), c.begin(), c.end());
    } while (next_combination(c, particles));
    return m;
  }

  m.sampled_ = true;
  std::mt19937_64 rng(seed);
  std::set<std::vector<std::size_t>> picked;
  std::vector<std::size_t> pool(particles);
  while (picked.size() < budget) {
    // Partial Fisher-Yates draws a uniform (n+1)-subset.
    for (std::size_t k = 0; k < particles; ++k) pool[k] = k;
    for (std::size_t k = 0; k < arity; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, particles - 1);
      std::swap(pool[k], pool[pick(rng)]);
    }
    std::vector<std::size_t> s(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(arity));
    std::sort(s.begin(), s.end());
    picked.insert(std::move(s));
  }
  m.indices_.reserve(budget * arity);
  for (const auto& s : picked) m.indices_.insert(m.indices_.end(), s.begin(), s.end());
  return m;
}

VolumeMonitor VolumeMonitor::from_set(const SimplexSet& set) {
  VolumeMonitor m;
  m.order_ = set.order();
  for (std::size_t s = 0; s < set.simplex_count(); ++s) {
    const auto v = set.simplex(s);
    m.indices_.insert(m.indices_.end(), v.begin(), v.end());
  }
  return m;
}

double mean_simplex_volume(const Configuration& config, const VolumeMonitor& monitor) {
  const std::size_t count = monitor.size();
  if (count == 0) throw ValidationError("volume monitor is empty");
  std::vector<double> vols(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(count); ++s) {
    vols[s] = std::sqrt(height_volume_squared(config, monitor.simplex(static_cast<std::size_t>(s))));
  }
  double sum = 0.0;
  for (double v : vols) sum += v;
  return sum / static_cast<double>(count);
}

}  // namespace simplexflow
