#pragma once

#include <stdexcept>
#include <string>

#include "nonkp/diagonal.hpp"
#include "nonkp/trajectory.hpp"

namespace nonkp {

struct RunConfig {
  Scheme scheme = Scheme::DiagonalIFRK4;
  double t_end = 1.0;
  /// Non-positive selects default_time_step(grid).
  double dt = 0.0;
  int snapshot_stride = 1;
  int diagnostics_stride = 1;
};

/// 0.25 min(Lx/Nx, Ly/Ny)
double default_time_step(const Grid2D& grid);

/// Raised when a state stops being finite or max|u| exceeds blow_up_threshold.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(double t, const std::string& detail);
  double time() const { return t_; }
  const std::string& detail() const { return detail_; }

 private:
  double t_;
  std::string detail_;
};

inline constexpr double blow_up_threshold = 1e6;

/// Multiplies each mode of branch i by exp(-i omega_i dt). Negative dt allowed.
StateW free_propagate(const StateW& w, double dt, const SymbolTable& tab);

/// One Lawson (integrating-factor) RK4 step of the diagonal system.
StateW step_ifrk4(const StateW& w, double dt, const SymbolTable& tab);

/// One classical RK4 step of rhs_physical.
StateUV step_rk4_physical(const StateUV& s, double dt);

/// Classical RK4 on rhs_linearized.
StateUV step_rk4_linearized(const StateUV& s, double dt);

/// Zeroes Nyquist rows/columns of both fields.
StateUV project_nyquist(const StateUV& s);

/// Throws BlowUpError if the state is non-finite or max|u| > blow_up_threshold.
void check_state(const StateUV& s);

/// Integrates from initial.t to initial.t + cfg.t_end. The step is shrunk so an
/// integer number of steps lands on t_end; the final state is always recorded.
Trajectory run(const RunConfig& cfg, const StateUV& initial);

}  // namespace nonkp
