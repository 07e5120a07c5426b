#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "config.hpp"

namespace nonkp::cli {

struct Outcome {
  bool passed = true;
  nlohmann::json summary;
  std::string detail;
};

/// Runs fn(0..n-1) on up to `threads` workers. Each index is handled exactly
/// once; the first exception is rethrown after all workers finish.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

StateUV initial_state(const Grid2D& grid, const InitialSettings& in);

/// Runs one scenario, writing its artifacts under `out`.
Outcome run_scenario(const Scenario& scn, const std::filesystem::path& out);

/// {scenario, reason, t, detail}; t is null when the failure has no time stamp.
nlohmann::json failure_json(const std::string& scenario, const std::string& reason, const nlohmann::json& t,
                            const std::string& detail);

/// Runs the scenario and reports. Writes summary.json on completion and
/// failure.json (also printed to `report`) when a tolerance fails or the run
/// aborts. Returns the process exit status.
int execute(const Scenario& scn, const std::filesystem::path& out, std::ostream& report);

}  // namespace nonkp::cli
