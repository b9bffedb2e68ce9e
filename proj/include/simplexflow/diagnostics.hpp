#pragma once

// Monitors for the qualitative behaviour of the flow: centroid
// conservation, non-increasing pairwise distances and radii about the
// initial centroid, potential decay and collapse of the affine rank.

#include <cstddef>
#include <vector>

#include "simplexflow/configuration.hpp"
#include "simplexflow/dynamics.hpp"
#include "simplexflow/geometry.hpp"
#include "simplexflow/potential.hpp"

namespace simplexflow {

Point center_of_mass(const Configuration& config);

/// max_k ||x_k - xbar||.
double radius_about(const Configuration& config, std::span<const double> centre);

struct ViolationStats {
  std::size_t count = 0;
  /// Largest excess over the allowed slack, in the monitored (squared) units.
  double worst = 0.0;
};

struct DiagnosticsOptions {
  /// Integrator step, used to convert snapshot spacing into a step count.
  double dt = 1e-3;
  /// Allowed increase per step, relative to the quantity's initial scale.
  double slack_per_step = 1e-12;
  double rank_tol = kDefaultRankTolerance;
  /// Centroid drift tolerance relative to the initial radius.
  double com_tol = 1e-10;
};

struct DiagnosticsReport {
  std::size_t snapshots = 0;
  double initial_radius = 0.0;
  double com_drift = 0.0;
  ViolationStats distance_violations;
  ViolationStats radius_violations;
  ViolationStats potential_violations;
  /// Distance and radius monotonicity are theorems for the full model only;
  /// for reduced runs they are recorded but do not affect passed().
  bool monotonicity_asserted = true;
  std::vector<double> mean_volume_series;
  std::vector<double> potential_series;
  std::size_t terminal_rank = 0;
  double terminal_potential = 0.0;
  double com_tol = 1e-10;

  bool com_conserved() const { return com_drift <= com_tol * initial_radius; }
  bool passed() const;
};

/// Requires traj.potential_series and traj.volume_series to be populated.
DiagnosticsReport check_trajectory(const Trajectory& traj, const ModelParams& params,
                                   const DiagnosticsOptions& options = {});

struct EquilibriumCheck {
  bool by_potential = false;
  bool by_rank = false;
  bool equilibrium() const { return by_potential && by_rank; }
  /// False signals a tolerance mismatch between the two criteria.
  bool agree() const { return by_potential == by_rank; }
};

/// Potential test: V_n <= tol * R^{2n} with R the radius about the centroid.
/// Rank test: affine_rank(config, sqrt(tol)) <= n - 1, since V_n scales with
/// the square of the off-subspace spread.
EquilibriumCheck classify_equilibrium(const Configuration& config, const ModelParams& params,
                                      double tol);

bool is_equilibrium(const Configuration& config, const ModelParams& params, double tol);

}  // namespace simplexflow
