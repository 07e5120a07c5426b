#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonkp/diagonal.hpp"
#include "nonkp/integrate.hpp"

namespace nonkp::cli {

enum class ScenarioKind { Simulate, DispersionTable, MassWave, BourgainScaling, DnVerify, Conservation };

std::string to_string(ScenarioKind kind);
ScenarioKind parse_scenario(const std::string& name);

/// Raised for every configuration problem; key() is the dotted name of the
/// offending entry ("grid.Nx") or empty when no single key is to blame.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct GridSettings {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  Grid2D make() const { return make_grid(nx, ny, lx, ly); }
};

enum class InitialKind { Random, PlaneWave, MassProfile };

struct InitialSettings {
  InitialKind kind = InitialKind::Random;
  double amplitude = 0.05;
  int max_mode = 4;
  std::uint64_t seed = 1;
  int j = 1;
  int k = 1;
};

struct DispersionSettings {
  int max_index = 10;
  double tolerance = 1e-10;
};

struct MassSettings {
  std::vector<double> epsilons{0.01, 0.02, 0.04};
  double tolerance = 1e-4;
  double slope_tolerance = 0.3;
};

enum class BourgainKind { Psi, Duhamel };

struct BourgainSettings {
  BourgainKind kind = BourgainKind::Psi;
  double b = 0.6;
  double eps = 0.1;
  double s = 1.0;
  double t_min = 0.1;
  double t_max = 10.0;
  int points = 9;
  int nt = 1 << 15;
  double tolerance = 0.05;
  Branch branch = Branch::One;
  int j = 1;
  int k = 1;
  double width = 0.5;
  double center = 0.0;
  double detuning = 20.0;
};

struct DnSettings {
  double h0 = 1.0;
  int n = 64;
  double length = 0.0;
  int k = 1;
  std::vector<int> orders{1, 2, 3};
  std::vector<double> amplitudes{0.01, 0.02, 0.04};
  double tolerance = 0.3;
};

struct ConservationSettings {
  double tolerance = 1e-6;
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::Simulate;
  std::optional<GridSettings> grid;
  RunConfig run;
  InitialSettings initial;
  DispersionSettings dispersion;
  MassSettings mass;
  BourgainSettings bourgain;
  DnSettings dn;
  ConservationSettings conservation;
  int threads = 1;
};

/// Flat "section.key" -> raw value view of a config file.
using RawConfig = std::map<std::string, std::string>;

/// Parses INI-style text: "[section]" headers, "key = value" lines, and full-line
/// comments starting with '#' or ';'.
RawConfig read_config_text(const std::string& text);
RawConfig read_config_file(const std::string& path);

/// Applies one "section.key=value" override on top of a parsed file.
void apply_override(RawConfig& raw, const std::string& assignment);

/// Validates and fills defaults. Unknown sections or keys are rejected.
Scenario build_scenario(ScenarioKind kind, const RawConfig& raw);

/// Documented keys with their defaults, one "section.key = default" per entry.
std::vector<std::pair<std::string, std::string>> documented_keys();

}  // namespace nonkp::cli
