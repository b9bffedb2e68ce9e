#pragma once

// OpenMP right-hand-side kernels. Each thread owns a disjoint block of
// output rows and every row is accumulated in ascending base order, so the
// result is bitwise independent of the thread count.

#include <cstdint>

#include "simplexflow/configuration.hpp"
#include "simplexflow/potential.hpp"
#include "simplexflow/simplex_set.hpp"

namespace simplexflow {

struct KernelStats {
  /// (particle, base) evaluations with the particle outside the base.
  std::uint64_t terms = 0;
};

VelocityField rhs_full(const Configuration& config, const ModelParams& params,
                       KernelStats* stats = nullptr);

VelocityField rhs_reduced(const Configuration& config, const SimplexSet& set,
                          const ModelParams& params, KernelStats* stats = nullptr);

/// Dispatches on params.mode; `set` is required in reduced mode.
VelocityField rhs(const Configuration& config, const ModelParams& params, const SimplexSet* set,
                  KernelStats* stats = nullptr);

}  // namespace simplexflow
