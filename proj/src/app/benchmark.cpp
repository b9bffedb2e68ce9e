#include "simplexflow/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include "simplexflow/combinations.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/kernels.hpp"

namespace simplexflow {

std::vector<BenchmarkRecord> benchmark(std::span<const RunSpec> specs, std::size_t repetitions,
                                       std::size_t steps) {
  if (repetitions < 3) throw ValidationError("benchmark needs at least 3 repetitions");
  if (steps < 1) throw ValidationError("benchmark needs at least 1 step");

  std::vector<BenchmarkRecord> records;
  for (const auto& spec : specs) {
    validate(spec);
    const auto topology = build_topology(spec);
    if (topology) {
      if (auto problems = validate(*topology); !problems.empty()) {
        throw ValidationError(problems.front());
      }
    }
    const SimplexSet* set = topology ? &*topology : nullptr;
    const auto initial = generate_initial(spec);

    BenchmarkRecord rec;
    rec.particles = spec.particles;
    rec.order = spec.params.order;
    rec.mode = spec.params.mode;
    rec.set_size = set ? set->ordered_size()
                       : falling_factorial(spec.particles, spec.params.order + 1);
    rec.rhs_evaluations_per_step = spec.integrator.method == Method::rk4 ? 4 : 1;

    KernelStats stats;
    (void)rhs(initial, spec.params, set, &stats);
    rec.terms_per_rhs = stats.terms;
    rec.terms_per_step = stats.terms * rec.rhs_evaluations_per_step;

    const RhsFunction field = [&](const Configuration& x) { return rhs(x, spec.params, set); };
    std::vector<double> per_step;
    for (std::size_t r = 0; r < repetitions; ++r) {
      Configuration x = initial;
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t s = 0; s < steps; ++s) {
        x = step(x, field, spec.integrator.dt, spec.integrator.method);
      }
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      per_step.push_back(elapsed.count() / static_cast<double>(steps));
    }
    std::nth_element(per_step.begin(), per_step.begin() + per_step.size() / 2, per_step.end());
    rec.seconds_per_step = per_step[per_step.size() / 2];
    records.push_back(rec);
  }
  return records;
}

void write_benchmark_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  out << "N,n,mode,set_size,seconds_per_step,rhs_evaluations_per_step,terms_per_rhs,"
         "terms_per_step\n";
  for (const auto& r : records) {
    char t[32];
    std::snprintf(t, sizeof t, "%.6e", r.seconds_per_step);
    out << r.particles << ',' << r.order << ',' << (r.mode == Mode::full ? "full" : "reduced")
        << ',' << r.set_size << ',' << t << ',' << r.rhs_evaluations_per_step << ','
        << r.terms_per_rhs << ',' << r.terms_per_step << '\n';
  }
}

}  // namespace simplexflow
