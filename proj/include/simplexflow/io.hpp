#pragma once

// Text formats. Particle indices are 1-based in every file.
//
//   topology:    header "n=<n> N=<N>", then one unordered simplex per line
//                as ascending space-separated indices.
//   trajectory:  CSV, header "t,particle,c0,...,c{d-1}", one row per
//                particle per snapshot, 17 significant digits.
//   diagnostics: JSON object mirroring DiagnosticsReport.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "simplexflow/diagnostics.hpp"
#include "simplexflow/dynamics.hpp"
#include "simplexflow/simplex_set.hpp"

namespace simplexflow {

void write_topology(std::ostream& out, const SimplexSet& set);
SimplexSet read_topology(std::istream& in);
SimplexSet load_topology(const std::filesystem::path& path);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// Snapshots and times only; the series are left empty.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory load_trajectory_csv(const std::filesystem::path& path);

struct ReportContext {
  std::size_t particles = 0;
  std::size_t dim = 0;
  ModelParams params;
  std::uint64_t seed = 0;
  bool deterministic = false;
};

std::string diagnostics_json(const DiagnosticsReport& report, const ReportContext& context);

/// Writes to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace simplexflow
