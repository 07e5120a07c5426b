#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonkp/trajectory.hpp"

namespace nonkp::cli {

/// Shortest text that round-trips a double (17 significant digits).
std::string format_real(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(std::vector<std::string> cells);
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& value);

/// Writes <stem>.json metadata and <stem>.bin holding u then v in physical
/// space as little-endian float64, row-major with y outer and x inner.
void write_snapshot(const std::filesystem::path& dir, const std::string& stem, const StateUV& s, Scheme scheme);

/// Reads a sidecar written by write_snapshot back into (u, v) samples.
std::pair<std::vector<double>, std::vector<double>> read_snapshot_data(const std::filesystem::path& bin, int nx, int ny);

std::string build_identifier();

}  // namespace nonkp::cli
