#include "simplexflow/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "simplexflow/errors.hpp"

namespace simplexflow {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("line " + std::to_string(line) + ": bad number '" + std::string(field) +
                          "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void write_topology(std::ostream& out, const SimplexSet& set) {
  out << "n=" << set.order() << " N=" << set.particles() << '\n';
  for (std::size_t s = 0; s < set.simplex_count(); ++s) {
    const auto v = set.simplex(s);
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? " " : "") << v[k] + 1;
    out << '\n';
  }
}

SimplexSet read_topology(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("topology file is empty");
  std::size_t order = 0, particles = 0;
  {
    std::istringstream header(line);
    std::string a, b;
    header >> a >> b;
    if (a.rfind("n=", 0) != 0 || b.rfind("N=", 0) != 0) {
      throw ValidationError("topology header must read 'n=<n> N=<N>'");
    }
    try {
      order = std::stoul(a.substr(2));
      particles = std::stoul(b.substr(2));
    } catch (const std::exception&) {
      throw ValidationError("topology header must read 'n=<n> N=<N>'");
    }
  }
  std::vector<IndexTuple> raw;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    IndexTuple t;
    long long idx = 0;
    while (fields >> idx) {
      if (idx < 1) {
        throw ValidationError("topology line " + std::to_string(line_no) +
                              ": indices are 1-based");
      }
      t.push_back(static_cast<std::size_t>(idx - 1));
    }
    if (!fields.eof()) {
      throw ValidationError("topology line " + std::to_string(line_no) + ": not an index list");
    }
    raw.push_back(std::move(t));
  }
  return SimplexSet::symmetric_closure(raw, particles, order);
}

SimplexSet load_topology(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open topology file " + path.string());
  return read_topology(in);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.snapshots.empty()) return;
  const std::size_t d = traj.snapshots.front().dim();
  out << "t,particle";
  for (std::size_t k = 0; k < d; ++k) out << ",c" << k;
  out << '\n';
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const auto t = format_double(traj.times[s]);
    const auto& snap = traj.snapshots[s];
    for (std::size_t i = 0; i < snap.size(); ++i) {
      out << t << ',' << i + 1;
      for (double v : snap[i]) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("trajectory file is empty");
  const auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "t" || header[1] != "particle") {
    throw ValidationError("trajectory header must start with 't,particle,c0'");
  }
  const std::size_t d = header.size() - 2;

  Trajectory traj;
  std::vector<double> values;
  std::size_t expected_particle = 1;
  double current_t = 0.0;
  std::size_t particles = 0;
  std::size_t line_no = 1;

  auto flush = [&]() {
    if (values.empty()) return;
    const std::size_t count = values.size() / d;
    if (particles == 0) particles = count;
    if (count != particles) {
      throw ValidationError("snapshot at t=" + format_double(current_t) + " has " +
                            std::to_string(count) + " particles, expected " +
                            std::to_string(particles));
    }
    traj.times.push_back(current_t);
    traj.snapshots.emplace_back(count, d, std::move(values));
    values = {};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != d + 2) {
      throw ValidationError("trajectory line " + std::to_string(line_no) + ": expected " +
                            std::to_string(d + 2) + " fields");
    }
    const double t = parse_double(fields[0], line_no);
    const auto particle = static_cast<std::size_t>(parse_double(fields[1], line_no));
    if (particle == 1) {
      flush();
      current_t = t;
      expected_particle = 1;
    }
    if (particle != expected_particle || t != current_t) {
      throw ValidationError("trajectory line " + std::to_string(line_no) +
                            ": rows must list particles 1..N per snapshot");
    }
    ++expected_particle;
    for (std::size_t k = 0; k < d; ++k) values.push_back(parse_double(fields[k + 2], line_no));
  }
  flush();
  if (traj.snapshots.empty()) throw ValidationError("trajectory file has no rows");
  return traj;
}

Trajectory load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RuntimeError("cannot open trajectory file " + path.string());
  return read_trajectory_csv(in);
}

std::string diagnostics_json(const DiagnosticsReport& report, const ReportContext& context) {
  auto violations = [](const ViolationStats& v) {
    return nlohmann::json{{"count", v.count}, {"worst", v.worst}};
  };
  nlohmann::json doc{
      {"N", context.particles},
      {"d", context.dim},
      {"n", context.params.order},
      {"kappa", context.params.kappa},
      {"mode", context.params.mode == Mode::full ? "full" : "reduced"},
      {"seed", context.seed},
      {"deterministic", context.deterministic},
      {"snapshots", report.snapshots},
      {"initial_radius", report.initial_radius},
      {"com_drift", report.com_drift},
      {"com_conserved", report.com_conserved()},
      {"distance_violations", violations(report.distance_violations)},
      {"radius_violations", violations(report.radius_violations)},
      {"potential_violations", violations(report.potential_violations)},
      {"monotonicity_asserted", report.monotonicity_asserted},
      {"mean_volume_series", report.mean_volume_series},
      {"potential_series", report.potential_series},
      {"terminal_rank", report.terminal_rank},
      {"terminal_potential", report.terminal_potential},
      {"passed", report.passed()},
  };
  return doc.dump(2) + "\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RuntimeError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw RuntimeError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw RuntimeError("cannot move " + tmp.string() + " to " + path.string() + ": " +
                       ec.message());
  }
}

}  // namespace simplexflow
