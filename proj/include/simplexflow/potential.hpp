#pragma once

// The n-simplex potential V_n, its sparse counterpart V_n^R, and the
// per-simplex gradient of Vol_n^2 through the projection formula
//
//   grad_{x_i} Vol_n(x_i, base)^2 = (2/n^2) Vol_{n-1}(base)^2 (x_i - H),
//
// with H the orthogonal projection of x_i onto the affine hull of the base.
// The `reference` namespace keeps a straightforward serial assembly of the
// flow on top of these pieces; the production kernels live in kernels.hpp.

#include <cstddef>
#include <span>

#include "simplexflow/configuration.hpp"
#include "simplexflow/simplex_set.hpp"

namespace simplexflow {

enum class Mode { full, reduced };

struct ModelParams {
  std::size_t order = 2;  // simplex order n
  double kappa = 1.0;     // coupling strength
  Mode mode = Mode::full;
};

void validate(const ModelParams& params);

/// Relative Vol_{n-1}(base)^2 cutoff (against the base diameter^{2(n-1)})
/// below which a base contributes nothing to the flow.
inline constexpr double kDegenerateBaseTolerance = 1e-14;

/// kappa / (2 (n+1) N^n) times the sum of Vol_n^2 over all ordered
/// (n+1)-tuples, evaluated over unordered combinations times (n+1)!.
double potential_full(const Configuration& config, const ModelParams& params);

/// kappa / (2 (n+1) |S|) times the sum of Vol_n^2 over the ordered tuples of S.
double potential_reduced(const Configuration& config, const SimplexSet& set,
                         const ModelParams& params);

/// Potential matching params.mode; `set` is required in reduced mode.
double potential(const Configuration& config, const ModelParams& params, const SimplexSet* set);

/// Gradient of Vol_n(x_base..., x_i)^2 with respect to x_i. Zero when i is
/// one of the base indices or the base is degenerate.
Point grad_vol_squared(std::size_t i, std::span<const std::size_t> base,
                       const Configuration& config);

namespace reference {

/// Serial assembly of -grad V_n via grad_vol_squared, one unordered base at
/// a time in ascending combination order.
VelocityField rhs_full(const Configuration& config, const ModelParams& params);

/// Serial assembly of the sparse flow, row i scaled by 1/|S_i|.
VelocityField rhs_reduced(const Configuration& config, const SimplexSet& set,
                          const ModelParams& params);

}  // namespace reference

/// Largest |analytic - central difference| / max(1, |analytic|) over all
/// coordinates, comparing the full-model flow with differences of V_n.
double gradient_check(const Configuration& config, const ModelParams& params, double h);

}  // namespace simplexflow
