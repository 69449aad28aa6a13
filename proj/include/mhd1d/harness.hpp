#pragma once

// File-level driver: each run or experiment writes into its own directory
// named after a hash of everything that determines its output.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mhd1d/config.hpp"
#include "mhd1d/csv.hpp"
#include "mhd1d/experiments.hpp"
#include "mhd1d/run.hpp"

namespace mhd1d {

inline std::filesystem::path output_directory(const std::filesystem::path& base, const std::string& label,
                                              const std::string& identity) {
  return base / (label + "-" + fnv1a_hex(identity));
}

struct RunOutcome {
  int exit_code = 0;
  std::filesystem::path directory;
  std::string message;
};

/// Runs a configuration and writes config.txt, fields.csv and
/// diagnostics.csv. An aborted run still writes everything recorded so far
/// plus the last good state, and returns exit code 3.
inline RunOutcome run_scenario(const RunConfig& c, const std::filesystem::path& base) {
  RunOutcome out;
  const std::string canon = serialize_config(c);
  out.directory = output_directory(base, c.scenario, run_identity(c));
  std::filesystem::create_directories(out.directory);
  write_file((out.directory / "config.txt").string(), [&](std::ostream& os) { os << canon; });

  Trajectory tr;
  try {
    tr = run(c);
  } catch (const SimulationAborted& e) {
    tr = e.partial;
    tr.snapshots.push_back(e.last_good);
    out.exit_code = 3;
    out.message = e.what();
  }
  write_file((out.directory / "fields.csv").string(), [&](std::ostream& os) { write_fields_csv(os, tr.snapshots); });
  write_file((out.directory / "diagnostics.csv").string(),
             [&](std::ostream& os) { write_diagnostics_csv(os, tr.diagnostics); });
  return out;
}

/// Writes report.csv and summary.txt; returns 0 when every check passed, 1
/// otherwise.
inline int write_report(const ExperimentReport& r, const std::filesystem::path& dir, std::ostream& log) {
  std::filesystem::create_directories(dir);
  write_file((dir / "report.csv").string(), [&](std::ostream& os) { write_table_csv(os, r.header, r.rows); });
  std::ostringstream summary;
  for (const auto& w : r.warnings) summary << "WARNING " << w << '\n';
  summary << r.checks;
  write_file((dir / "summary.txt").string(), [&](std::ostream& os) { os << summary.str(); });
  log << summary.str();
  return r.passed() ? 0 : 1;
}

}  // namespace mhd1d
