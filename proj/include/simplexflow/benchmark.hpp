#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "simplexflow/run_spec.hpp"

namespace simplexflow {

struct BenchmarkRecord {
  std::size_t particles = 0;
  std::size_t order = 0;
  Mode mode = Mode::full;
  /// |S| in ordered tuples; for full runs, every distinct-index tuple.
  std::uint64_t set_size = 0;
  /// Median over repetitions.
  double seconds_per_step = 0.0;
  std::size_t rhs_evaluations_per_step = 0;
  /// (particle, base) evaluations in one right-hand side, counted by the kernel.
  std::uint64_t terms_per_rhs = 0;
  std::uint64_t terms_per_step = 0;
};

/// Times `steps` integrator steps per repetition for each spec (initial data
/// and topology generated as for a run). Needs at least 3 repetitions.
std::vector<BenchmarkRecord> benchmark(std::span<const RunSpec> specs, std::size_t repetitions,
                                       std::size_t steps);

void write_benchmark_csv(std::ostream& out, std::span<const BenchmarkRecord> records);

}  // namespace simplexflow
