#include "nonkp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nonkp/fft.hpp"

namespace nonkp {
namespace {

std::vector<double> second_derivative_y(const std::vector<double>& m, double ly) {
  const int ny = static_cast<int>(m.size());
  std::vector<Complex> c(m.begin(), m.end());
  fft::forward_1d(c);
  for (int q = 0; q < ny; ++q) {
    const int k = q < ny / 2 ? q : q - ny;
    const double mu = 2.0 * std::numbers::pi * k / ly;
    c[q] *= (q == ny / 2) ? 0.0 : -mu * mu / ny;
  }
  fft::backward_1d(c);
  std::vector<double> out(ny);
  for (int q = 0; q < ny; ++q) out[q] = c[q].real();
  return out;
}

double l2_over_y(const std::vector<double>& r, double ly) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return std::sqrt(s * ly / static_cast<double>(r.size()));
}

}  // namespace

DriftReport hamiltonian_drift(const Trajectory& traj) {
  if (traj.diagnostics.size() < 2) throw std::invalid_argument("hamiltonian_drift: need at least two records");
  const double h0 = traj.diagnostics.front().H;
  double worst = 0.0;
  for (const auto& r : traj.diagnostics) worst = std::max(worst, std::abs(r.H - h0));
  if (h0 == 0.0) return {worst, true};
  return {worst / std::abs(h0), false};
}

MassResidual mass_wave_residual(const Trajectory& traj) {
  const auto& rec = traj.diagnostics;
  if (rec.size() < 5) throw std::invalid_argument("mass_wave_residual: need at least five records");
  if (traj.snapshots.empty()) throw std::invalid_argument("mass_wave_residual: trajectory has no grid");
  const double ly = traj.snapshots.front().u.grid().ly();
  const double dt = rec[1].t - rec[0].t;
  if (!(dt > 0.0)) throw std::invalid_argument("mass_wave_residual: times must increase");
  for (std::size_t n = 1; n < rec.size(); ++n) {
    if (std::abs((rec[n].t - rec[n - 1].t) - dt) > 1e-9 * std::max(1.0, dt)) {
      throw std::invalid_argument("mass_wave_residual: records are not uniformly spaced");
    }
  }

  const std::size_t ny = rec.front().mass.size();
  double worst_residual = 0.0;
  double worst_myy = 0.0;
  std::vector<double> r(ny);
  for (std::size_t n = 2; n + 2 < rec.size(); ++n) {
    const auto myy = second_derivative_y(rec[n].mass, ly);
    for (std::size_t q = 0; q < ny; ++q) {
      const double mtt = (-rec[n + 2].mass[q] + 16.0 * rec[n + 1].mass[q] - 30.0 * rec[n].mass[q] +
                          16.0 * rec[n - 1].mass[q] - rec[n - 2].mass[q]) /
                         (12.0 * dt * dt);
      r[q] = mtt - myy[q];
    }
    worst_residual = std::max(worst_residual, l2_over_y(r, ly));
    worst_myy = std::max(worst_myy, l2_over_y(myy, ly));
  }
  const double relative = worst_myy < 1e-14 ? worst_residual : worst_residual / worst_myy;
  return {relative, worst_residual};
}

double fit_phase_frequency(std::span<const double> t, std::span<const Complex> samples) {
  if (t.size() != samples.size() || t.size() < 2) {
    throw std::invalid_argument("fit_phase_frequency: need at least two matching samples");
  }
  std::vector<double> phase(samples.size());
  for (std::size_t n = 0; n < samples.size(); ++n) {
    if (std::abs(samples[n]) < 1e-12) throw std::invalid_argument("fit_phase_frequency: amplitude below 1e-12");
    phase[n] = std::arg(samples[n]);
    if (n > 0) {
      // Nearest branch to the previous unwrapped phase.
      const double jump = phase[n] - phase[n - 1];
      phase[n] -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
    }
  }
  const double n = static_cast<double>(t.size());
  double mt = 0.0, mp = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    mp += phase[i];
  }
  mt /= n;
  mp /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sxy += (t[i] - mt) * (phase[i] - mp);
    sxx += (t[i] - mt) * (t[i] - mt);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_phase_frequency: times must not all coincide");
  return -sxy / sxx;
}

std::vector<StateW> diagonal_history(const Trajectory& traj, const SymbolTable& tab) {
  std::vector<StateW> out;
  out.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots) out.push_back(to_diagonal(s, tab));
  return out;
}

double fit_plane_wave_frequency(const std::vector<StateW>& history, int j, int k, Branch branch) {
  std::vector<double> t;
  std::vector<Complex> a;
  for (const auto& w : history) {
    t.push_back(w.t);
    a.push_back(w.component(branch).mode(j, k));
  }
  return fit_phase_frequency(t, a);
}

double fit_plane_wave_frequency(const Trajectory& traj, const SymbolTable& tab, int j, int k, Branch branch) {
  return fit_plane_wave_frequency(diagonal_history(traj, tab), j, k, branch);
}

DiagnosticsRecord record_diagnostics(const StateUV& s) {
  return {s.t, hamiltonian(s), l2_norm(s.u), l2_norm(s.v), mass_profile(s)};
}

}  // namespace nonkp
