#pragma once

#include <string>
#include <vector>

#include "nonkp/model.hpp"

namespace nonkp {

enum class Scheme { DiagonalIFRK4, PhysicalRK4, LinearExact };

std::string to_string(Scheme scheme);
/// Accepts "diagonal-ifrk4", "physical-rk4", "linear-exact".
Scheme parse_scheme(const std::string& name);

struct DiagnosticsRecord {
  double t = 0.0;
  double H = 0.0;
  double l2_u = 0.0;
  double l2_v = 0.0;
  std::vector<double> mass;
};

DiagnosticsRecord record_diagnostics(const StateUV& s);

struct Trajectory {
  Scheme scheme = Scheme::DiagonalIFRK4;
  double dt = 0.0;
  std::vector<StateUV> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
};

}  // namespace nonkp
