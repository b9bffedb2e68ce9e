#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "simplexflow/dynamics.hpp"
#include "simplexflow/errors.hpp"
#include "simplexflow/io.hpp"

using namespace simplexflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "simplexflow_io_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Topology, WritesOneBasedLines) {
  const std::vector<IndexTuple> edge{{0, 1}};
  const auto s = SimplexSet::base_point_set(edge, 4);
  std::ostringstream out;
  write_topology(out, s);
  EXPECT_EQ(out.str(), "n=2 N=4\n1 2 3\n1 2 4\n");
}

TEST(Topology, RoundTrip) {
  const std::vector<IndexTuple> raw{{0, 1, 2, 3}, {2, 4, 5, 6}};
  const auto s = SimplexSet::symmetric_closure(raw, 8, 3);
  std::stringstream buf;
  write_topology(buf, s);
  EXPECT_EQ(read_topology(buf), s);
}

TEST(Topology, ReadClosesPermutations) {
  std::istringstream in("n=2 N=3\n3 1 2\n2 1 3\n");
  const auto s = read_topology(in);
  EXPECT_EQ(s.simplex_count(), 1u);
  EXPECT_EQ(s.ordered_size(), 6u);
}

TEST(Topology, Errors) {
  std::istringstream no_header("1 2 3\n");
  EXPECT_THROW(read_topology(no_header), ValidationError);
  std::istringstream zero("n=2 N=3\n0 1 2\n");
  EXPECT_THROW(read_topology(zero), ValidationError);
  std::istringstream range("n=2 N=3\n1 2 4\n");
  EXPECT_THROW(read_topology(range), ValidationError);
  std::istringstream arity("n=2 N=3\n1 2\n");
  EXPECT_THROW(read_topology(arity), ValidationError);
  EXPECT_THROW(load_topology(scratch("missing.top")), RuntimeError);
}

TEST(TrajectoryCsv, HeaderAndRows) {
  Trajectory t;
  t.times = {0.0, 0.5};
  t.snapshots = {Configuration(2, 2, {0, 1, 2, 3}), Configuration(2, 2, {4, 5, 6, 7})};
  std::ostringstream out;
  write_trajectory_csv(out, t);
  std::istringstream lines(out.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "t,particle,c0,c1");
  EXPECT_EQ(first, "0,1,0,1");
}

TEST(TrajectoryCsv, BitExactRoundTrip) {
  std::mt19937_64 rng(61);
  Trajectory t;
  for (int k = 0; k < 3; ++k) {
    t.times.push_back(0.1 * k + 1e-17);
    t.snapshots.push_back(oracle::random_configuration(5, 3, rng, 1e3));
  }
  t.snapshots[1][2][1] = 1e-300;
  t.snapshots[2][4][0] = -0.1;
  std::stringstream buf;
  write_trajectory_csv(buf, t);
  const auto back = read_trajectory_csv(buf);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back.times, t.times);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(back.snapshots[k], t.snapshots[k]);
}

TEST(TrajectoryCsv, RejectsMalformedInput) {
  std::istringstream bad_header("time,particle,c0\n0,1,0\n");
  EXPECT_THROW(read_trajectory_csv(bad_header), ValidationError);
  std::istringstream bad_number("t,particle,c0\n0,1,abc\n");
  EXPECT_THROW(read_trajectory_csv(bad_number), ValidationError);
  std::istringstream empty("t,particle,c0\n");
  EXPECT_THROW(read_trajectory_csv(empty), ValidationError);
}

TEST(DiagnosticsJson, CarriesReportFields) {
  DiagnosticsReport r;
  r.snapshots = 2;
  r.initial_radius = 3.0;
  r.com_drift = 1e-15;
  r.distance_violations = {1, 0.25};
  r.mean_volume_series = {1.0, 0.5};
  r.potential_series = {2.0, 1.0};
  r.terminal_rank = 1;
  r.terminal_potential = 1.0;
  ReportContext ctx;
  ctx.particles = 40;
  ctx.dim = 2;
  ctx.seed = 42;
  const auto doc = nlohmann::json::parse(diagnostics_json(r, ctx));
  EXPECT_EQ(doc.at("terminal_rank").get<int>(), 1);
  EXPECT_EQ(doc.at("distance_violations").at("count").get<int>(), 1);
  EXPECT_EQ(doc.at("mean_volume_series").size(), 2u);
  EXPECT_EQ(doc.at("passed").get<bool>(), r.passed());
  EXPECT_DOUBLE_EQ(doc.at("com_drift").get<double>(), 1e-15);
}

TEST(WriteFileAtomic, ReplacesContents) {
  const auto path = scratch("atomic.txt");
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text, "second");
  for (const auto& entry : fs::directory_iterator(path.parent_path())) {
    EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos) << entry.path();
  }
}
