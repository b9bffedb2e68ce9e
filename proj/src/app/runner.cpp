#include <sstream>

#include "simplexflow/errors.hpp"
#include "simplexflow/io.hpp"
#include "simplexflow/run_spec.hpp"
#include "simplexflow/volume_monitor.hpp"

namespace simplexflow {

ReportContext report_context(const RunSpec& spec) {
  return {spec.particles, spec.dim, spec.params, spec.seed.value_or(0), spec.deterministic};
}

DiagnosticsOptions diagnostics_options(const RunSpec& spec) {
  DiagnosticsOptions opts;
  opts.dt = spec.integrator.dt;
  return opts;
}

RunResult execute(const RunSpec& spec) {
  validate(spec);
  RunResult result;
  result.topology = build_topology(spec);
  if (result.topology) {
    if (auto problems = validate(*result.topology); !problems.empty()) {
      std::string msg = "invalid topology:";
      for (const auto& p : problems) msg += "\n  " + p;
      throw ValidationError(msg);
    }
  }
  const auto initial = generate_initial(spec);
  const auto monitor = VolumeMonitor::combinations(spec.particles, spec.params.order,
                                                   spec.volume_budget, spec.seed.value_or(0));
  const SimplexSet* set = result.topology ? &*result.topology : nullptr;
  result.trajectory = simulate(initial, spec.params, set, spec.integrator, &monitor);
  result.report = check_trajectory(result.trajectory, spec.params, diagnostics_options(spec));
  return result;
}

RunResult run(const RunSpec& spec) {
  auto result = execute(spec);
  if (!spec.trajectory_path.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, result.trajectory);
    write_file_atomic(spec.trajectory_path, csv.str());
  }
  if (!spec.diagnostics_path.empty()) {
    write_file_atomic(spec.diagnostics_path,
                      diagnostics_json(result.report, report_context(spec)));
  }
  return result;
}

}  // namespace simplexflow
