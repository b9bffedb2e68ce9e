#include "simplexflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "simplexflow/errors.hpp"

namespace simplexflow {

Point center_of_mass(const Configuration& config) {
  Point c(config.dim(), 0.0);
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += config[i][k];
  }
  for (auto& v : c) v /= static_cast<double>(config.size());
  return c;
}

double radius_about(const Configuration& config, std::span<const double> centre) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < config.size(); ++i) {
    r2 = std::max(r2, squared_distance(config[i], centre));
  }
  return std::sqrt(r2);
}

bool DiagnosticsReport::passed() const {
  if (!com_conserved()) return false;
  if (potential_violations.count != 0) return false;
  if (monotonicity_asserted && (distance_violations.count != 0 || radius_violations.count != 0)) {
    return false;
  }
  return true;
}

namespace {

void note(ViolationStats& stats, double excess) {
  if (excess > 0.0) {
    ++stats.count;
    stats.worst = std::max(stats.worst, excess);
  }
}

}  // namespace

DiagnosticsReport check_trajectory(const Trajectory& traj, const ModelParams& params,
                                   const DiagnosticsOptions& options) {
  if (traj.snapshots.empty()) throw ValidationError("trajectory is empty");
  if (traj.potential_series.size() != traj.size() || traj.volume_series.size() != traj.size()) {
    throw ValidationError("trajectory series are not populated");
  }

  DiagnosticsReport report;
  report.snapshots = traj.size();
  report.monotonicity_asserted = params.mode == Mode::full;
  report.mean_volume_series = traj.volume_series;
  report.potential_series = traj.potential_series;
  report.com_tol = options.com_tol;

  const auto& first = traj.snapshots.front();
  const std::size_t big_n = first.size();
  const auto centre0 = center_of_mass(first);
  report.initial_radius = radius_about(first, centre0);
  const double radius_scale = report.initial_radius * report.initial_radius;
  double distance_scale = 0.0;
  for (std::size_t i = 0; i < big_n; ++i) {
    for (std::size_t j = i + 1; j < big_n; ++j) {
      distance_scale = std::max(distance_scale, squared_distance(first[i], first[j]));
    }
  }
  const double potential_scale = traj.potential_series.front();

  for (std::size_t s = 0; s < traj.size(); ++s) {
    const auto& snap = traj.snapshots[s];
    const auto centre = center_of_mass(snap);
    report.com_drift = std::max(report.com_drift, std::sqrt(squared_distance(centre, centre0)));
    if (s == 0) continue;

    const auto& prev = traj.snapshots[s - 1];
    const double gap = traj.times[s] - traj.times[s - 1];
    const double steps = std::max(1.0, std::round(gap / options.dt));
    const double slack = options.slack_per_step * steps;

    for (std::size_t i = 0; i < big_n; ++i) {
      note(report.radius_violations, squared_distance(snap[i], centre0) -
                                         squared_distance(prev[i], centre0) -
                                         slack * radius_scale);
      for (std::size_t j = i + 1; j < big_n; ++j) {
        note(report.distance_violations, squared_distance(snap[i], snap[j]) -
                                             squared_distance(prev[i], prev[j]) -
                                             slack * distance_scale);
      }
    }
    note(report.potential_violations, traj.potential_series[s] -
                                          traj.potential_series[s - 1] -
                                          slack * potential_scale);
  }

  report.terminal_rank = affine_rank(traj.snapshots.back(), options.rank_tol);
  report.terminal_potential = traj.potential_series.back();
  return report;
}

EquilibriumCheck classify_equilibrium(const Configuration& config, const ModelParams& params,
                                      double tol) {
  if (!(tol > 0.0)) throw ValidationError("equilibrium tolerance must be positive");
  ModelParams full = params;
  full.mode = Mode::full;
  const double radius = radius_about(config, center_of_mass(config));

  EquilibriumCheck check;
  check.by_potential =
      potential_full(config, full) <= tol * std::pow(radius, 2.0 * static_cast<double>(params.order));
  check.by_rank = affine_rank(config, std::sqrt(tol)) + 1 <= params.order;
  return check;
}

bool is_equilibrium(const Configuration& config, const ModelParams& params, double tol) {
  return classify_equilibrium(config, params, tol).equilibrium();
}

}  // namespace simplexflow
