#include "simplexflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "simplexflow/combinations.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/geometry.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace simplexflow {

namespace {

constexpr std::size_t kBaseBlock = 1 << 15;
// Bases per cache tile in the full kernel.
constexpr std::size_t kTile = 256;

// Per-base data. For an active base b the contribution to particle i is
// A_b (x_i - c_b) with
//   A_b = (2/n^2) Vol_{n-1}(b)^2 (I - P_b),
// P_b the orthogonal projector onto the direction space of the base hull.
// Each record holds c_b followed by A_b (row-major); inactive bases have a
// zero record.
struct BaseTable {
  std::size_t order = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> members;  // order per base
  std::vector<double> records;       // stride() per base

  std::size_t stride() const { return dim + dim * dim; }
  void resize(std::size_t count) {
    members.resize(count * order);
    records.resize(count * stride());
  }
  std::size_t size() const { return order == 0 ? 0 : members.size() / order; }
};

double max_squared_distance(const Configuration& config, const std::size_t* idx, std::size_t n) {
  const std::size_t d = config.dim();
  double best = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double* a = config[idx[p]].data();
    for (std::size_t q = p + 1; q < n; ++q) {
      const double* b = config[idx[q]].data();
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
      best = std::max(best, s);
    }
  }
  return best;
}

// A_b from edge Gram data without normalisation: with E the edge matrix,
// G = E^T E and m = n - 1 edges,
//   Vol_{n-1}^2 (I - P) = (det G I - E adj(G) E^T) / (m!)^2.
// Returns false for a degenerate base.
bool weighted_projector_closed_form(const double* origin, const double* const* others,
                                    std::size_t n, std::size_t d, double scale_sq, double* a) {
  const double coef = 2.0 / static_cast<double>(n * n);
  if (n == 1) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) a[r * d + c] = r == c ? coef : 0.0;
    }
    return true;
  }
  if (n == 2) {
    double e[16];
    double g = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      e[k] = others[0][k] - origin[k];
      g += e[k] * e[k];
    }
    if (g <= kDegenerateBaseTolerance * scale_sq) return false;
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        a[r * d + c] = coef * ((r == c ? g : 0.0) - e[r] * e[c]);
      }
    }
    return true;
  }
  // n == 3
  double e1[16], e2[16];
  double g11 = 0.0, g12 = 0.0, g22 = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    e1[k] = others[0][k] - origin[k];
    e2[k] = others[1][k] - origin[k];
    g11 += e1[k] * e1[k];
    g12 += e1[k] * e2[k];
    g22 += e2[k] * e2[k];
  }
  const double det = g11 * g22 - g12 * g12;
  if (det / 4.0 <= kDegenerateBaseTolerance * scale_sq * scale_sq) return false;
  const double w = coef / 4.0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double proj = g22 * e1[r] * e1[c] - g12 * (e1[r] * e2[c] + e2[r] * e1[c]) +
                          g11 * e2[r] * e2[c];
      a[r * d + c] = w * ((r == c ? det : 0.0) - proj);
    }
  }
  return true;
}

// Gram-Schmidt on the edges; the product of residual norms is
// (n-1)! Vol_{n-1}.
bool weighted_projector_orthonormal(const double* origin, const double* const* others,
                                    std::size_t n, std::size_t d, double scale_sq, double* a,
                                    std::vector<double>& scratch) {
  const double scale = std::sqrt(scale_sq);
  scratch.assign((n - 1) * d, 0.0);
  double volume_factor = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    double* e = scratch.data() + (j - 1) * d;
    for (std::size_t k = 0; k < d; ++k) e[k] = others[j - 1][k] - origin[k];
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (std::size_t m = 1; m < j; ++m) {
        const double* f = scratch.data() + (m - 1) * d;
        double c = 0.0;
        for (std::size_t k = 0; k < d; ++k) c += e[k] * f[k];
        for (std::size_t k = 0; k < d; ++k) e[k] -= c * f[k];
      }
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < d; ++k) norm += e[k] * e[k];
    norm = std::sqrt(norm);
    if (norm <= kChartRankTolerance * scale) return false;
    for (std::size_t k = 0; k < d; ++k) e[k] /= norm;
    volume_factor *= norm / static_cast<double>(j);
  }
  const double base_volume = volume_factor * volume_factor;
  if (base_volume <= kDegenerateBaseTolerance * std::pow(scale, 2.0 * static_cast<double>(n - 1))) {
    return false;
  }
  const double w = 2.0 / static_cast<double>(n * n) * base_volume;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      double p = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j) p += scratch[j * d + r] * scratch[j * d + c];
      a[r * d + c] = w * ((r == c ? 1.0 : 0.0) - p);
    }
  }
  return true;
}

void precompute_base(const Configuration& config, BaseTable& table, std::size_t b,
                     std::vector<double>& scratch) {
  const std::size_t n = table.order;
  const std::size_t d = table.dim;
  const std::size_t* idx = table.members.data() + b * n;
  double* rec = table.records.data() + b * table.stride();
  const double* origin = config[idx[0]].data();
  std::copy(origin, origin + d, rec);

  const double* others[64];
  for (std::size_t j = 1; j < n; ++j) others[j - 1] = config[idx[j]].data();
  const double scale_sq = max_squared_distance(config, idx, n);
  const bool active =
      n <= 3 && d <= 16
          ? weighted_projector_closed_form(origin, others, n, d, scale_sq, rec + d)
          : weighted_projector_orthonormal(origin, others, n, d, scale_sq, rec + d, scratch);
  if (!active) std::fill(rec, rec + table.stride(), 0.0);
}

void precompute_all(const Configuration& config, BaseTable& table) {
  if (table.order > 64) throw ValidationError("simplex order above 64 is not supported");
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(table.size()); ++b) {
      precompute_base(config, table, static_cast<std::size_t>(b), scratch);
    }
  }
}

// acc += A (x - c) for one record.
inline void accumulate(const double* rec, std::size_t d, const double* x, double* acc) {
  const double* c = rec;
  const double* a = rec + d;
  for (std::size_t r = 0; r < d; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += a[r * d + k] * (x[k] - c[k]);
    acc[r] += s;
  }
}

template <std::size_t Order>
inline bool contains(const std::size_t* m, std::size_t order, std::size_t i) {
  const std::size_t n = Order > 0 ? Order : order;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k] == i) return true;
  }
  return false;
}

// Adds every base of the table that excludes i to row i, tile by tile so a
// tile of records is reused by all rows of the thread. Returns the number of
// (particle, base) terms.
template <std::size_t D, std::size_t Order>
std::uint64_t sweep_full(const Configuration& config, const BaseTable& table, VelocityField& out) {
  const std::size_t big_n = config.size();
  const std::size_t n = table.order;
  const std::size_t d = table.dim;
  const std::size_t stride = table.stride();
  const std::size_t count = table.size();
  std::uint64_t terms = 0;

#pragma omp parallel reduction(+ : terms)
  {
#ifdef _OPENMP
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t me = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t threads = 1, me = 0;
#endif
    const std::size_t lo = big_n * me / threads;
    const std::size_t hi = big_n * (me + 1) / threads;
    const std::size_t* members = table.members.data();
    const double* records = table.records.data();
    for (std::size_t t0 = 0; t0 < count; t0 += kTile) {
      const std::size_t t1 = std::min(count, t0 + kTile);
      for (std::size_t i = lo; i < hi; ++i) {
        if constexpr (D > 0) {
          // Two interleaved partial sums (even and odd bases) shorten the
          // dependency chain; the split is fixed, so results stay reproducible.
          double x[D], sum[2][D] = {};
          std::copy_n(config[i].data(), D, x);
          for (std::size_t b = t0; b < t1; ++b) {
            if (contains<Order>(members + b * n, n, i)) continue;
            ++terms;
            const double* c = records + b * stride;
            const double* a = c + D;
            double diff[D];
            for (std::size_t k = 0; k < D; ++k) diff[k] = x[k] - c[k];
            double* part = sum[b & 1];
            for (std::size_t r = 0; r < D; ++r) {
              double s = a[r * D] * diff[0];
              for (std::size_t k = 1; k < D; ++k) s += a[r * D + k] * diff[k];
              part[r] += s;
            }
          }
          double* acc = out[i].data();
          for (std::size_t r = 0; r < D; ++r) acc[r] += sum[0][r] + sum[1][r];
        } else {
          const double* x = config[i].data();
          double* acc = out[i].data();
          for (std::size_t b = t0; b < t1; ++b) {
            if (contains<Order>(members + b * n, n, i)) continue;
            ++terms;
            accumulate(records + b * stride, d, x, acc);
          }
        }
      }
    }
  }
  return terms;
}

template <std::size_t D>
std::uint64_t sweep_full_order(const Configuration& config, const BaseTable& table,
                               VelocityField& out) {
  switch (table.order) {
    case 1: return sweep_full<D, 1>(config, table, out);
    case 2: return sweep_full<D, 2>(config, table, out);
    case 3: return sweep_full<D, 3>(config, table, out);
    default: return sweep_full<D, 0>(config, table, out);
  }
}

std::uint64_t sweep_full_dispatch(const Configuration& config, const BaseTable& table,
                                  VelocityField& out) {
  switch (table.dim) {
    case 1: return sweep_full_order<1>(config, table, out);
    case 2: return sweep_full_order<2>(config, table, out);
    case 3: return sweep_full_order<3>(config, table, out);
    case 4: return sweep_full_order<4>(config, table, out);
    default: return sweep_full_order<0>(config, table, out);
  }
}

void check_set(const Configuration& config, const SimplexSet& set, const ModelParams& params) {
  if (set.order() != params.order) {
    throw ValidationError("simplex set arity " + std::to_string(set.order() + 1) +
                          " does not match n+1 = " + std::to_string(params.order + 1));
  }
  if (set.particles() != config.size()) {
    throw ValidationError("simplex set is for " + std::to_string(set.particles()) +
                          " particles, configuration has " + std::to_string(config.size()));
  }
}

}  // namespace

VelocityField rhs_full(const Configuration& config, const ModelParams& params,
                       KernelStats* stats) {
  validate(params);
  const std::size_t big_n = config.size();
  const std::size_t n = params.order;
  const std::size_t d = config.dim();
  VelocityField out(big_n, d);
  if (stats) stats->terms = 0;
  if (n > big_n - 1) return out;

  const std::uint64_t total = binomial(big_n, n);
  BaseTable table{n, d, {}, {}};
  std::vector<std::size_t> combo(n);
  for (std::size_t k = 0; k < n; ++k) combo[k] = k;
  std::uint64_t terms = 0;

  for (std::uint64_t start = 0; start < total; start += kBaseBlock) {
    const std::size_t count =
        static_cast<std::size_t>(std::min<std::uint64_t>(kBaseBlock, total - start));
    table.resize(count);
    for (std::size_t b = 0; b < count; ++b) {
      std::copy(combo.begin(), combo.end(), table.members.begin() + b * n);
      next_combination(combo, big_n);
    }
    precompute_all(config, table);
    terms += sweep_full_dispatch(config, table, out);
  }

  const double scale = -params.kappa * static_cast<double>(factorial(n)) /
                       (2.0 * std::pow(static_cast<double>(big_n), n));
  for (auto& v : out.flat()) v *= scale;
  if (stats) stats->terms = terms;
  return out;
}

VelocityField rhs_reduced(const Configuration& config, const SimplexSet& set,
                          const ModelParams& params, KernelStats* stats) {
  validate(params);
  check_set(config, set, params);
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (set.neighborhood(i).empty()) {
      throw ValidationError("S_" + std::to_string(i + 1) +
                            " is empty: particle would never move");
    }
  }

  const std::size_t n = params.order;
  const std::size_t d = config.dim();
  BaseTable table{n, d, {}, {}};
  table.resize(set.base_count());
  for (std::size_t b = 0; b < set.base_count(); ++b) {
    const auto m = set.base(b);
    std::copy(m.begin(), m.end(), table.members.begin() + b * n);
  }
  precompute_all(config, table);

  VelocityField out(config.size(), d);
  const double n_factorial = static_cast<double>(factorial(n));
  std::uint64_t terms = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : terms)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(config.size()); ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto x = config[i];
    double* acc = out[i].data();
    const auto nb = set.neighborhood(i);
    for (auto b : nb) accumulate(table.records.data() + b * table.stride(), d, x.data(), acc);
    terms += nb.size();
    const double scale =
        -params.kappa * n_factorial / (2.0 * static_cast<double>(set.neighborhood_size(i)));
    for (std::size_t k = 0; k < d; ++k) acc[k] *= scale;
  }
  if (stats) stats->terms = terms;
  return out;
}

VelocityField rhs(const Configuration& config, const ModelParams& params, const SimplexSet* set,
                  KernelStats* stats) {
  if (params.mode == Mode::full) return rhs_full(config, params, stats);
  if (set == nullptr) throw ValidationError("reduced mode needs a simplex set");
  return rhs_reduced(config, *set, params, stats);
}

}  // namespace simplexflow
