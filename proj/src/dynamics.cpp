#include "simplexflow/dynamics.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "simplexflow/diagnostics.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/kernels.hpp"
#include "simplexflow/volume_monitor.hpp"

namespace simplexflow {

namespace {

// out = base + h * k
Configuration axpy(const Configuration& base, double h, const VelocityField& k) {
  Configuration out = base;
  auto o = out.flat();
  auto v = k.flat();
  for (std::size_t j = 0; j < o.size(); ++j) o[j] += h * v[j];
  return out;
}

VelocityField checked(const RhsFunction& rhs, const Configuration& x) {
  auto v = rhs(x);
  if (v.size() != x.size() || v.dim() != x.dim()) {
    throw RuntimeError("velocity field shape does not match the configuration");
  }
  if (const auto bad = first_non_finite_row(v); bad != v.size()) {
    throw RuntimeError("non-finite velocity for particle " + std::to_string(bad + 1));
  }
  return v;
}

}  // namespace

void validate(const IntegratorConfig& integ) {
  if (!(integ.dt > 0.0) || !std::isfinite(integ.dt)) throw ValidationError("dt must be positive");
  if (integ.steps < 1) throw ValidationError("steps must be at least 1");
  if (integ.record_every < 1) throw ValidationError("record_every must be at least 1");
  if (!(integ.stop_ratio >= 0.0)) throw ValidationError("stop_ratio must be non-negative");
}

Configuration step(const Configuration& config, const RhsFunction& rhs, double dt,
                   Method method) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (method == Method::euler) return axpy(config, dt, checked(rhs, config));

  const auto k1 = checked(rhs, config);
  const auto k2 = checked(rhs, axpy(config, 0.5 * dt, k1));
  const auto k3 = checked(rhs, axpy(config, 0.5 * dt, k2));
  const auto k4 = checked(rhs, axpy(config, dt, k3));

  Configuration out = config;
  auto o = out.flat();
  const auto a = k1.flat(), b = k2.flat(), c = k3.flat(), e = k4.flat();
  const double w = dt / 6.0;
  for (std::size_t j = 0; j < o.size(); ++j) o[j] += w * (a[j] + 2.0 * b[j] + 2.0 * c[j] + e[j]);
  return out;
}

void populate_series(Trajectory& traj, const ModelParams& params, const SimplexSet* set,
                     const VolumeMonitor& monitor) {
  traj.potential_series.clear();
  traj.volume_series.clear();
  for (const auto& snap : traj.snapshots) {
    traj.potential_series.push_back(potential(snap, params, set));
    traj.volume_series.push_back(mean_simplex_volume(snap, monitor));
  }
}

Trajectory simulate(const Configuration& initial, const ModelParams& params,
                    const SimplexSet* set, const IntegratorConfig& integ,
                    const VolumeMonitor* monitor) {
  validate(params);
  validate(integ);
  if (params.mode == Mode::reduced) {
    if (set == nullptr) throw ValidationError("reduced mode needs a simplex set");
    if (set->order() != params.order || set->particles() != initial.size()) {
      throw ValidationError("simplex set does not match the model (n or N differ)");
    }
    if (auto problems = validate(*set); !problems.empty()) throw ValidationError(problems.front());
  }

  std::optional<VolumeMonitor> own_monitor;
  if (monitor == nullptr) {
    own_monitor = VolumeMonitor::combinations(initial.size(), params.order);
    monitor = &*own_monitor;
  }
  const SimplexSet* active_set = params.mode == Mode::reduced ? set : nullptr;
  const RhsFunction field = [&](const Configuration& x) {
    return rhs(x, params, active_set);
  };

  Trajectory traj;
  auto record = [&](double t, const Configuration& x) {
    traj.times.push_back(t);
    traj.snapshots.push_back(x);
    traj.potential_series.push_back(potential(x, params, active_set));
    traj.volume_series.push_back(mean_simplex_volume(x, *monitor));
  };

  Configuration x = initial;
  record(0.0, x);
  const double stop_level = integ.stop_ratio * traj.potential_series.front();
  for (std::size_t s = 1; s <= integ.steps; ++s) {
    x = step(x, field, integ.dt, integ.method);
    if (s % integ.record_every == 0) {
      record(static_cast<double>(s) * integ.dt, x);
      if (integ.stop_ratio > 0.0 && traj.potential_series.back() < stop_level) break;
    }
  }
  return traj;
}

Configuration explicit_linear_solution(const Configuration& initial, double kappa, double t) {
  if (!(t >= 0.0)) throw ValidationError("time must be non-negative");
  const auto centre = center_of_mass(initial);
  const double decay = std::exp(-kappa * t);
  Configuration out = initial;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto row = out[i];
    for (std::size_t k = 0; k < row.size(); ++k) {
      row[k] = (1.0 - decay) * centre[k] + decay * initial[i][k];
    }
  }
  return out;
}

}  // namespace simplexflow
