#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nonkp/diagonal.hpp"
#include "nonkp/spectral.hpp"

namespace nonkp {

/// Smooth cutoff: 1 on [-1, 1], 0 outside (-2, 2).
double bump_eval(double t);
/// psi(t / T)
double bump_T(double t, double T);

/// <x> = sqrt(1 + x^2)
inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

/// Periodic time window [-Lt/2, Lt/2) sampled at t_n = -Lt/2 + n Lt/Nt.
class TimeGrid {
 public:
  static TimeGrid make(int nt, double lt);

  int nt() const { return nt_; }
  double lt() const { return lt_; }
  double step() const { return lt_ / nt_; }
  double t(int n) const { return -0.5 * lt_ + n * step(); }
  /// Temporal frequency of storage slot m (FFT order).
  double tau(int m) const;

 private:
  TimeGrid(int nt, double lt) : nt_(nt), lt_(lt) {}
  int nt_;
  double lt_;
};

/// Window length 8 max(T, 1) used for cutoffs at scale T.
double time_window(double T);

/// Amplitudes c_m with f(t_n) = sum_m c_m exp(-i tau_m t_n), in FFT order.
std::vector<Complex> temporal_coefficients(std::span<const Complex> f, const TimeGrid& tg);
/// Inverse of temporal_coefficients.
std::vector<Complex> temporal_synthesis(std::span<const Complex> c, const TimeGrid& tg);

/// Integral of f from 0 to t_n, computed spectrally (mean times t plus the
/// periodic primitive shifted to vanish at t = 0).
std::vector<Complex> antiderivative_from_zero(std::span<const Complex> f, const TimeGrid& tg);

/// (Lt sum_m <tau_m>^{2b} |c_m|^2)^{1/2}
double norm_Hb(std::span<const Complex> f, double b, double lt);

/// (Lx Ly sum <xi>^4 <|xi|+|mu|>^{2s} |f|^2)^{1/2}
double norm_Zs(const SpectralField& f, double s);

/// Time samples of spatial Fourier coefficients, slice n holding t_n.
class SpaceTimeField {
 public:
  SpaceTimeField(const Grid2D& grid, const TimeGrid& time);

  const Grid2D& grid() const { return grid_; }
  const TimeGrid& time() const { return time_; }

  std::span<Complex> slice(int n);
  std::span<const Complex> slice(int n) const;
  Complex& at(int n, int p, int q) { return data_[n * grid_.size() + grid_.index(p, q)]; }
  Complex at(int n, int p, int q) const { return data_[n * grid_.size() + grid_.index(p, q)]; }

  /// Time series of one spatial mode (copy).
  std::vector<Complex> series(int p, int q) const;
  void set_series(int p, int q, std::span<const Complex> values);

  SpaceTimeField& operator*=(Complex c);

 private:
  Grid2D grid_;
  TimeGrid time_;
  std::vector<Complex> data_;
};

/// Weight <xi>^2 <tau>^b <|xi|+|mu|>^s.
double norm_Hbs(const SpaceTimeField& f, double b, double s);

/// Weight <xi>^2 <tau - omega_i>^b <|xi|+|mu|>^s, with tau sampled on the
/// lattice tau_m + omega_i(xi, mu) of each spatial mode.
double norm_Xibs(Branch branch, const SpaceTimeField& f, double b, double s, const SymbolTable& tab);

/// Applies S_i(sign * t_n) to every slice.
SpaceTimeField propagate_slicewise(const SpaceTimeField& f, Branch branch, const SymbolTable& tab, double sign);

/// psi_T(t) S_i(t) w0 on the time grid.
SpaceTimeField cutoff_free_solution(const SpectralField& w0, Branch branch, const SymbolTable& tab,
                                    const TimeGrid& tg, double T = 1.0);

struct FreeEstimateReport {
  /// One entry per sample and branch.
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// (max - min) / min
  double spread = 0.0;
  /// ||psi||_{H^b} on the same time grid.
  double psi_norm = 0.0;
  bool bounded = false;
};

/// Ratios ||psi S_i(t) w_i0||_{X_i^{b,s}} / ||w_i0||_{Z^s} for both branches.
/// bounded is set when max ratio <= 1.2 ||psi||_{H^b}.
FreeEstimateReport verify_free_estimate(const std::vector<StateW>& samples, double b, double s,
                                        const SymbolTable& tab, const TimeGrid& tg);

/// One spatial mode of a forcing: amplitude * exp(-(t-center)^2/(2 width^2))
/// * exp(-i (omega_i + detuning) t).
struct ModeForcing {
  int j = 0;
  int k = 0;
  Complex amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
  double detuning = 0.0;
};

struct Forcing {
  std::string name;
  Branch branch = Branch::One;
  std::vector<ModeForcing> modes;
};

SpaceTimeField build_forcing(const Forcing& forcing, const SymbolTable& tab, const TimeGrid& tg);

/// psi_T(t) * integral_0^t S_i(t - t') F(t') dt'
SpaceTimeField truncated_duhamel(const SpaceTimeField& F, Branch branch, const SymbolTable& tab, double T);

struct DuhamelSample {
  double T = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / (T^eps rhs)
  double ratio = 0.0;
};

struct DuhamelReport {
  std::string name;
  std::vector<DuhamelSample> samples;
  double ratio_spread = 0.0;  // max / min
  double slope = 0.0;         // log-log slope of lhs against T
  bool passed = false;
};

/// Sweeps T with b = 1/2 + eps, b' = 1/2 - 2 eps, window time_window(T) and nt
/// samples. passed requires slope >= eps - 0.1 and ratio_spread <= 10.
DuhamelReport verify_duhamel_scaling(const Forcing& forcing, double eps, double s, std::span<const double> Ts,
                                     const SymbolTable& tab, int nt);

/// ||psi_T integral_0^t f||_{H^b} for a scalar forcing.
double scalar_duhamel_norm(const std::function<Complex(double)>& f, double T, double b, int nt);

/// ||psi_T||_{H^b} on the window time_window(T).
double psi_T_norm(double T, double b, int nt);

/// Least-squares slope of log y against log x.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// n points log-spaced on [lo, hi].
std::vector<double> log_space(double lo, double hi, int n);

}  // namespace nonkp
