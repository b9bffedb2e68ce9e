#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "simplexflow/configuration.hpp"
#include "simplexflow/potential.hpp"
#include "simplexflow/simplex_set.hpp"

namespace simplexflow {

class VolumeMonitor;

enum class Method { rk4, euler };

struct IntegratorConfig {
  double dt = 1e-3;
  std::size_t steps = 20000;
  std::size_t record_every = 100;
  Method method = Method::rk4;
  /// Stop at a snapshot once V < stop_ratio * V(0). Zero disables.
  double stop_ratio = 0.0;
};

void validate(const IntegratorConfig& integ);

using RhsFunction = std::function<VelocityField(const Configuration&)>;

/// One explicit step. Throws RuntimeError naming the first particle whose
/// velocity is not finite.
Configuration step(const Configuration& config, const RhsFunction& rhs, double dt,
                   Method method = Method::rk4);

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> snapshots;
  std::vector<double> potential_series;
  std::vector<double> volume_series;

  std::size_t size() const { return snapshots.size(); }
};

/// Integrates the full (set == nullptr) or reduced flow from `initial`,
/// recording a snapshot every `record_every` steps plus the initial state.
/// Without a monitor the mean volume runs over all (n+1)-combinations, or a
/// seeded sample of kDefaultVolumeSampleBudget of them.
Trajectory simulate(const Configuration& initial, const ModelParams& params,
                    const SimplexSet* set, const IntegratorConfig& integ,
                    const VolumeMonitor* monitor = nullptr);

/// Fills potential_series and volume_series from the snapshots.
void populate_series(Trajectory& traj, const ModelParams& params, const SimplexSet* set,
                     const VolumeMonitor& monitor);

/// Closed-form solution of the linear consensus flow (n = 1):
/// x_i(t) = (1 - e^{-kappa t}) xbar(0) + e^{-kappa t} x_i(0).
Configuration explicit_linear_solution(const Configuration& initial, double kappa, double t);

}  // namespace simplexflow
