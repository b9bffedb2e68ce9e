// simplexflow: run, benchmark and inspect simplex-volume consensus flows.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simplexflow/benchmark.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/io.hpp"
#include "simplexflow/run_spec.hpp"
#include "simplexflow/volume_monitor.hpp"

using namespace simplexflow;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

void print_summary(const DiagnosticsReport& r) {
  std::printf("snapshots          %zu\n", r.snapshots);
  std::printf("com drift          %.3e (radius %.3e)\n", r.com_drift, r.initial_radius);
  std::printf("distance increases %zu (worst %.3e)%s\n", r.distance_violations.count,
              r.distance_violations.worst, r.monotonicity_asserted ? "" : " [recorded only]");
  std::printf("radius increases   %zu (worst %.3e)%s\n", r.radius_violations.count,
              r.radius_violations.worst, r.monotonicity_asserted ? "" : " [recorded only]");
  std::printf("potential increases %zu\n", r.potential_violations.count);
  if (!r.mean_volume_series.empty()) {
    std::printf("mean volume        %.6e -> %.6e\n", r.mean_volume_series.front(),
                r.mean_volume_series.back());
  }
  std::printf("terminal potential %.6e\n", r.terminal_potential);
  std::printf("terminal rank      %zu\n", r.terminal_rank);
  std::printf("checks             %s\n", r.passed() ? "passed" : "FAILED");
}

std::vector<IndexTuple> parse_bases(const std::vector<std::string>& raw) {
  std::vector<IndexTuple> out;
  for (const auto& s : raw) {
    IndexTuple t;
    std::stringstream in(s);
    std::string field;
    while (std::getline(in, field, ',')) {
      const long long v = std::stoll(field);
      if (v < 1) throw ValidationError("base indices are 1-based");
      t.push_back(static_cast<std::size_t>(v - 1));
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simplex-volume consensus gradient flows"};
  app.require_subcommand(1);

  std::string spec_path, out_traj, out_diag;
  std::uint64_t seed = 0;
  bool deterministic = false;

  auto* run_cmd = app.add_subcommand("run", "Integrate a run spec and write outputs");
  run_cmd->add_option("--spec", spec_path, "JSON run spec")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out-traj", out_traj, "Trajectory CSV (overrides the spec)");
  run_cmd->add_option("--out-diag", out_diag, "Diagnostics JSON (overrides the spec)");
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Seed for generated initial data");
  run_cmd->add_flag("--deterministic", deterministic, "Record deterministic mode in the report");

  std::vector<std::string> bench_specs;
  std::size_t repetitions = 5, bench_steps = 10;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("benchmark", "Time full vs reduced right-hand sides");
  bench_cmd->add_option("--spec", bench_specs, "JSON run specs")->required();
  bench_cmd->add_option("--repetitions", repetitions, "Repetitions per spec (>= 3)");
  bench_cmd->add_option("--steps", bench_steps, "Integrator steps per repetition");
  bench_cmd->add_option("--out", bench_out, "CSV output (stdout if omitted)");
  auto* bench_seed = bench_cmd->add_option("--seed", seed, "Seed override");

  std::string diag_traj;
  auto* diag_cmd = app.add_subcommand("diag", "Recompute diagnostics for a stored trajectory");
  diag_cmd->add_option("--spec", spec_path, "JSON run spec")->required()->check(CLI::ExistingFile);
  diag_cmd->add_option("--traj", diag_traj, "Trajectory CSV")->required()->check(CLI::ExistingFile);
  diag_cmd->add_option("--out-diag", out_diag, "Diagnostics JSON");
  diag_cmd->add_flag("--deterministic", deterministic, "Record deterministic mode in the report");

  auto* topo_cmd = app.add_subcommand("topology", "Generate or validate simplex set files");
  topo_cmd->require_subcommand(1);
  std::size_t topo_n = 0, topo_order = 0;
  std::vector<std::string> topo_bases;
  bool topo_full = false;
  std::string topo_out, topo_file;
  auto* gen_cmd = topo_cmd->add_subcommand("generate", "Write a topology file");
  gen_cmd->add_option("--N", topo_n, "Particle count")->required();
  gen_cmd->add_option("--n", topo_order, "Simplex order");
  gen_cmd->add_option("--base", topo_bases, "Comma-separated 1-based base tuple (repeatable)");
  gen_cmd->add_flag("--full", topo_full, "Every distinct-index simplex");
  gen_cmd->add_option("--out", topo_out, "Output path (stdout if omitted)");
  auto* check_cmd = topo_cmd->add_subcommand("validate", "Check a topology file");
  check_cmd->add_option("--file", topo_file, "Topology file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      auto spec = load_run_spec(spec_path);
      if (!out_traj.empty()) spec.trajectory_path = out_traj;
      if (!out_diag.empty()) spec.diagnostics_path = out_diag;
      if (*seed_opt) spec.seed = seed;
      spec.deterministic = deterministic;
      const auto result = run(spec);
      print_summary(result.report);
      return 0;
    }

    if (*bench_cmd) {
      std::vector<RunSpec> specs;
      for (const auto& p : bench_specs) {
        specs.push_back(load_run_spec(p));
        if (*bench_seed) specs.back().seed = seed;
      }
      const auto records = benchmark(specs, repetitions, bench_steps);
      std::ostringstream csv;
      write_benchmark_csv(csv, records);
      if (bench_out.empty()) {
        std::cout << csv.str();
      } else {
        write_file_atomic(bench_out, csv.str());
      }
      return 0;
    }

    if (*diag_cmd) {
      auto spec = load_run_spec(spec_path);
      spec.deterministic = deterministic;
      auto traj = load_trajectory_csv(diag_traj);
      const auto topology = build_topology(spec);
      const SimplexSet* set = topology ? &*topology : nullptr;
      const auto monitor = VolumeMonitor::combinations(
          traj.snapshots.front().size(), spec.params.order, spec.volume_budget,
          spec.seed.value_or(0));
      populate_series(traj, spec.params, set, monitor);
      const auto report = check_trajectory(traj, spec.params, diagnostics_options(spec));
      auto context = report_context(spec);
      context.particles = traj.snapshots.front().size();
      context.dim = traj.snapshots.front().dim();
      if (!out_diag.empty()) write_file_atomic(out_diag, diagnostics_json(report, context));
      print_summary(report);
      return 0;
    }

    if (*gen_cmd) {
      SimplexSet set = [&] {
        if (topo_full) {
          if (topo_order == 0) throw ValidationError("--full needs --n");
          return SimplexSet::full_set(topo_n, topo_order);
        }
        if (topo_bases.empty()) throw ValidationError("give --base tuples or --full");
        auto bases = parse_bases(topo_bases);
        if (topo_order != 0 && bases.front().size() != topo_order) {
          throw ValidationError("--base tuples must have n entries");
        }
        return SimplexSet::base_point_set(bases, topo_n);
      }();
      std::ostringstream text;
      write_topology(text, set);
      if (topo_out.empty()) {
        std::cout << text.str();
      } else {
        write_file_atomic(topo_out, text.str());
      }
      for (const auto& p : validate(set)) std::cerr << "warning: " << p << '\n';
      return 0;
    }

    if (*check_cmd) {
      const auto set = load_topology(topo_file);
      const auto problems = validate(set);
      std::printf("n=%zu N=%zu simplices=%zu |S|=%llu\n", set.order(), set.particles(),
                  set.simplex_count(), static_cast<unsigned long long>(set.ordered_size()));
      for (const auto& p : problems) std::printf("violation: %s\n", p.c_str());
      return problems.empty() ? 0 : kExitValidation;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
