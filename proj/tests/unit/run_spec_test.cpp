#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "simplexflow/benchmark.hpp"
#include "simplexflow/diagnostics.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/io.hpp"
#include "simplexflow/run_spec.hpp"

using namespace simplexflow;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({
  "N": 8, "d": 2, "n": 2, "kappa": 1.0, "mode": "full",
  "init": {"generator": "perturbed-affine", "sigma": 0.1, "window": 10},
  "seed": 42,
  "integrator": {"dt": 1e-3, "steps": 200, "record_every": 50}
})";

std::string with(const std::string& base, const std::string& key_values) {
  auto s = base;
  s.insert(s.rfind('}'), ", " + key_values);
  return s;
}

// Sample mean and standard error of the squared distance to the first
// n-1 coordinate axes.
std::pair<double, double> offset_moment(const Configuration& x, std::size_t sub) {
  std::vector<double> r2;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = sub; k < x.dim(); ++k) s += x[i][k] * x[i][k];
    r2.push_back(s);
  }
  double mean = 0.0;
  for (double v : r2) mean += v;
  mean /= static_cast<double>(r2.size());
  double var = 0.0;
  for (double v : r2) var += (v - mean) * (v - mean);
  var /= static_cast<double>(r2.size() - 1);
  return {mean, std::sqrt(var / static_cast<double>(r2.size()))};
}

}  // namespace

TEST(ParseRunSpec, ReadsFields) {
  const auto spec = parse_run_spec(R"({
    "N": 40, "d": 2, "n": 2, "kappa": 0.5, "mode": "reduced",
    "topology": {"generator": "base-points", "bases": [[1, 2]]},
    "init": {"generator": "uniform-ball", "radius": 2.0},
    "seed": 7,
    "integrator": {"dt": 1e-2, "steps": 10, "record_every": 5, "method": "euler",
                   "stop_ratio": 1e-14},
    "monitor": {"sample_budget": 1000},
    "outputs": {"trajectory": "t.csv", "diagnostics": "d.json"}
  })");
  EXPECT_EQ(spec.particles, 40u);
  EXPECT_EQ(spec.params.mode, Mode::reduced);
  EXPECT_EQ(spec.params.kappa, 0.5);
  EXPECT_EQ(spec.topology.generator, TopologySpec::Generator::base_points);
  ASSERT_EQ(spec.topology.tuples.size(), 1u);
  EXPECT_EQ(spec.topology.tuples[0], (IndexTuple{0, 1}));
  EXPECT_EQ(spec.init.generator, InitSpec::Generator::uniform_ball);
  EXPECT_EQ(spec.seed, 7u);
  EXPECT_EQ(spec.integrator.method, Method::euler);
  EXPECT_EQ(spec.integrator.stop_ratio, 1e-14);
  EXPECT_EQ(spec.volume_budget, 1000u);
  EXPECT_EQ(spec.trajectory_path, "t.csv");
  EXPECT_NO_THROW(validate(spec));
}

TEST(ParseRunSpec, RejectsUnknownKeysAtEveryLevel) {
  EXPECT_THROW(parse_run_spec(with(kSmall, R"("kapa": 1)")), ValidationError);
  EXPECT_THROW(parse_run_spec(R"({"N": 4, "d": 2, "n": 2,
                                  "integrator": {"dt": 1e-3, "step": 5}})"),
               ValidationError);
  EXPECT_THROW(parse_run_spec(R"({"N": 4, "d": 2, "n": 2,
                                  "init": {"generator": "uniform-ball", "radius": 1, "r": 2}})"),
               ValidationError);
  EXPECT_THROW(parse_run_spec(R"({"N": 4, "d": 2, "n": 2, "outputs": {"traj": "x"}})"),
               ValidationError);
  EXPECT_THROW(parse_run_spec("{not json"), ValidationError);
  EXPECT_THROW(parse_run_spec(R"({"N": 4, "d": 2, "n": 2, "mode": "sparse"})"), ValidationError);
}

TEST(ValidateRunSpec, ConstraintViolations) {
  auto spec = parse_run_spec(kSmall);
  spec.seed.reset();
  EXPECT_THROW(validate(spec), ValidationError);

  spec = parse_run_spec(kSmall);
  spec.particles = 2;
  EXPECT_THROW(validate(spec), ValidationError);

  spec = parse_run_spec(kSmall);
  spec.params.mode = Mode::reduced;
  EXPECT_THROW(validate(spec), ValidationError);

  spec = parse_run_spec(kSmall);
  spec.integrator.dt = -1.0;
  EXPECT_THROW(validate(spec), ValidationError);

  spec = parse_run_spec(kSmall);
  spec.params.order = 4;
  spec.particles = 8;
  EXPECT_THROW(validate(spec), ValidationError);  // perturbed-affine needs n-1 <= d
}

TEST(GenerateInitial, SameSeedSameConfiguration) {
  const auto spec = parse_run_spec(kSmall);
  EXPECT_EQ(generate_initial(spec), generate_initial(spec));
  auto other = spec;
  other.seed = 43;
  EXPECT_NE(generate_initial(spec), generate_initial(other));
}

TEST(GenerateInitial, UnperturbedIsEquilibrium) {
  auto spec = parse_run_spec(kSmall);
  spec.init.sigma = 0.0;
  const auto x = generate_initial(spec);
  EXPECT_EQ(affine_rank(x), 1u);
  EXPECT_TRUE(is_equilibrium(x, spec.params, 1e-12));
}

TEST(GenerateInitial, GaussianOffsetMoment) {
  for (std::size_t d : {2u, 3u}) {
    auto spec = parse_run_spec(kSmall);
    spec.particles = 10000;
    spec.dim = d;
    const auto [mean, se] = offset_moment(generate_initial(spec), 1);
    const double expected = 0.01 * static_cast<double>(d - 2 + 1);
    EXPECT_LE(std::abs(mean - expected), 3.0 * se) << "d=" << d;
  }
}

TEST(GenerateInitial, UniformBallStaysInside) {
  auto spec = parse_run_spec(with(kSmall, R"("monitor": {"sample_budget": 10})"));
  spec.init.generator = InitSpec::Generator::uniform_ball;
  spec.init.radius = 2.0;
  const auto x = generate_initial(spec);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_LE(std::hypot(x[i][0], x[i][1]), 2.0);
  }
}

TEST(Run, IsolatedParticleNamesNeighbourhood) {
  auto spec = parse_run_spec(R"({
    "N": 5, "d": 2, "n": 2, "mode": "reduced",
    "topology": {"generator": "explicit", "simplices": [[1, 2, 3], [2, 3, 4]]},
    "init": {"generator": "uniform-ball"}, "seed": 1,
    "integrator": {"steps": 10, "record_every": 5}
  })");
  try {
    execute(spec);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("S_5"), std::string::npos) << e.what();
  }
}

TEST(Run, WritesOutputsAndReingestsFinalSnapshot) {
  const auto dir = fs::temp_directory_path() / "simplexflow_run_test";
  fs::create_directories(dir);
  auto spec = parse_run_spec(kSmall);
  spec.trajectory_path = (dir / "traj.csv").string();
  spec.diagnostics_path = (dir / "diag.json").string();
  const auto result = run(spec);
  ASSERT_TRUE(fs::exists(spec.trajectory_path));
  ASSERT_TRUE(fs::exists(spec.diagnostics_path));
  EXPECT_TRUE(result.report.passed());
  EXPECT_EQ(result.trajectory.size(), 5u);

  auto again = parse_run_spec(kSmall);
  again.init.generator = InitSpec::Generator::file;
  again.init.path = spec.trajectory_path;
  again.seed.reset();
  EXPECT_NO_THROW(validate(again));
  EXPECT_EQ(generate_initial(again), result.trajectory.snapshots.back());

  again.particles = 9;
  EXPECT_THROW(generate_initial(again), ValidationError);
}

TEST(Benchmark, ExactTermCounts) {
  auto full = parse_run_spec(kSmall);
  full.particles = 20;
  auto reduced = parse_run_spec(R"({
    "N": 20, "d": 2, "n": 2, "mode": "reduced",
    "topology": {"generator": "base-points", "bases": [[1, 2]]},
    "init": {"generator": "perturbed-affine"}, "seed": 3
  })");
  const std::vector<RunSpec> specs{full, reduced, full};
  const auto records = benchmark(specs, 3, 2);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].terms_per_rhs, 3u * 1140u);
  EXPECT_EQ(records[0].rhs_evaluations_per_step, 4u);
  EXPECT_EQ(records[0].terms_per_step, 4u * 3u * 1140u);
  EXPECT_EQ(records[0].set_size, 20u * 19u * 18u);
  EXPECT_EQ(records[1].terms_per_rhs, 3u * 18u);
  EXPECT_EQ(records[1].set_size, 6u * 18u);
  EXPECT_EQ(records[2].terms_per_rhs, records[0].terms_per_rhs);
  EXPECT_GT(records[0].seconds_per_step, 0.0);
  EXPECT_THROW(benchmark(specs, 2, 2), ValidationError);
}
