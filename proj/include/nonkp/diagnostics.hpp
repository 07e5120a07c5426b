#pragma once

#include <span>
#include <vector>

#include "nonkp/diagonal.hpp"
#include "nonkp/trajectory.hpp"

namespace nonkp {

struct DriftReport {
  double value = 0.0;
  /// Set when H(0) == 0 and value is the absolute drift.
  bool absolute = false;
};

/// max_t |H(t) - H(0)| / |H(0)| over the diagnostics records.
DriftReport hamiltonian_drift(const Trajectory& traj);

struct MassResidual {
  /// max_t ||m_tt - m_yy|| / max_t ||m_yy||, falling back to the absolute value
  /// when max_t ||m_yy|| < 1e-14.
  double relative = 0.0;
  /// max_t ||m_tt - m_yy||
  double absolute = 0.0;
};

/// m_tt from the 4th-order centered stencil over uniformly spaced diagnostics
/// records (interior times only), m_yy spectrally. Norms are L2 over y.
MassResidual mass_wave_residual(const Trajectory& traj);

/// Least-squares slope of the unwrapped phase of samples ~ exp(-i w t); returns w.
double fit_phase_frequency(std::span<const double> t, std::span<const Complex> samples);

/// Measured frequency of branch `branch` at mode (j, k) over the snapshots.
double fit_plane_wave_frequency(const Trajectory& traj, const SymbolTable& tab, int j, int k, Branch branch);

/// Snapshots mapped to diagonal variables, for fitting many modes at once.
std::vector<StateW> diagonal_history(const Trajectory& traj, const SymbolTable& tab);
double fit_plane_wave_frequency(const std::vector<StateW>& history, int j, int k, Branch branch);

}  // namespace nonkp
