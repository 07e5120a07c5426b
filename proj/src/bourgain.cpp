#include "nonkp/bourgain.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "nonkp/fft.hpp"

namespace nonkp {
namespace {

constexpr Complex kI{0.0, 1.0};

double q(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double spatial_weight(double xi, double mu, double s) {
  const double a = japanese(xi);
  return a * a * std::pow(japanese(std::abs(xi) + std::abs(mu)), s);
}

/// Lt sum <tau_m>^{2b} |c_m|^2 for one series.
double weighted_temporal_energy(std::span<const Complex> f, const TimeGrid& tg, double b) {
  const auto c = temporal_coefficients(f, tg);
  double sum = 0.0;
  for (int m = 0; m < tg.nt(); ++m) sum += std::pow(japanese(tg.tau(m)), 2.0 * b) * std::norm(c[m]);
  return tg.lt() * sum;
}

bool all_zero(std::span<const Complex> f) {
  return std::all_of(f.begin(), f.end(), [](const Complex& c) { return c == Complex(0.0); });
}

template <typename SeriesMap>
double space_time_norm(const SpaceTimeField& f, double b, double s, SeriesMap&& map) {
  const Grid2D& g = f.grid();
  double sum = 0.0;
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      auto series = f.series(p, q);
      if (all_zero(series)) continue;
      map(p, q, series);
      const double w = spatial_weight(g.xi(p), g.mu(q), s);
      sum += w * w * weighted_temporal_energy(series, f.time(), b);
    }
  }
  return std::sqrt(sum * g.lx() * g.ly());
}

}  // namespace

double bump_eval(double t) {
  const double a = std::abs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double up = q(2.0 - a);
  return up / (up + q(a - 1.0));
}

double bump_T(double t, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("bump_T: T must be positive");
  return bump_eval(t / T);
}

TimeGrid TimeGrid::make(int nt, double lt) {
  if (nt < 4 || nt % 2 != 0) throw std::invalid_argument("time grid: nt must be even and >= 4");
  if (!(lt > 0.0) || !std::isfinite(lt)) throw std::invalid_argument("time grid: Lt must be positive");
  return TimeGrid(nt, lt);
}

double TimeGrid::tau(int m) const {
  const int signed_m = m < nt_ / 2 ? m : m - nt_;
  return 2.0 * std::numbers::pi * signed_m / lt_;
}

double time_window(double T) { return 8.0 * std::max(T, 1.0); }

std::vector<Complex> temporal_coefficients(std::span<const Complex> f, const TimeGrid& tg) {
  if (static_cast<int>(f.size()) != tg.nt()) throw std::invalid_argument("temporal series length mismatch");
  // exp(i tau_m t_n) = (-1)^m exp(2 pi i m n / N) since t_0 = -Lt/2.
  std::vector<Complex> c(f.begin(), f.end());
  fft::backward_1d(c);
  const double inv = 1.0 / tg.nt();
  for (int m = 0; m < tg.nt(); ++m) c[m] *= (m % 2 == 0 ? inv : -inv);
  return c;
}

std::vector<Complex> temporal_synthesis(std::span<const Complex> c, const TimeGrid& tg) {
  if (static_cast<int>(c.size()) != tg.nt()) throw std::invalid_argument("temporal series length mismatch");
  std::vector<Complex> f(c.begin(), c.end());
  for (int m = 1; m < tg.nt(); m += 2) f[m] = -f[m];
  fft::forward_1d(f);
  return f;
}

std::vector<Complex> antiderivative_from_zero(std::span<const Complex> f, const TimeGrid& tg) {
  auto c = temporal_coefficients(f, tg);
  const Complex mean = c[0];
  Complex at_zero = 0.0;
  c[0] = 0.0;
  for (int m = 1; m < tg.nt(); ++m) {
    c[m] /= -kI * tg.tau(m);
    at_zero += c[m];
  }
  auto out = temporal_synthesis(c, tg);
  for (int n = 0; n < tg.nt(); ++n) out[n] += mean * tg.t(n) - at_zero;
  return out;
}

double norm_Hb(std::span<const Complex> f, double b, double lt) {
  if (f.size() < 4) throw std::invalid_argument("norm_Hb: series length must be >= 4");
  const TimeGrid tg = TimeGrid::make(static_cast<int>(f.size()), lt);
  return std::sqrt(weighted_temporal_energy(f, tg, b));
}

double norm_Zs(const SpectralField& f, double s) {
  const Grid2D& g = f.grid();
  double sum = 0.0;
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      const double w = spatial_weight(g.xi(p), g.mu(q), s);
      sum += w * w * std::norm(f.at(p, q));
    }
  }
  return std::sqrt(sum * g.lx() * g.ly());
}

SpaceTimeField::SpaceTimeField(const Grid2D& grid, const TimeGrid& time)
    : grid_(grid), time_(time), data_(grid.size() * static_cast<std::size_t>(time.nt())) {}

std::span<Complex> SpaceTimeField::slice(int n) {
  return std::span<Complex>(data_).subspan(n * grid_.size(), grid_.size());
}

std::span<const Complex> SpaceTimeField::slice(int n) const {
  return std::span<const Complex>(data_).subspan(n * grid_.size(), grid_.size());
}

std::vector<Complex> SpaceTimeField::series(int p, int q) const {
  std::vector<Complex> out(time_.nt());
  for (int n = 0; n < time_.nt(); ++n) out[n] = at(n, p, q);
  return out;
}

void SpaceTimeField::set_series(int p, int q, std::span<const Complex> values) {
  if (static_cast<int>(values.size()) != time_.nt()) throw std::invalid_argument("set_series: length mismatch");
  for (int n = 0; n < time_.nt(); ++n) at(n, p, q) = values[n];
}

SpaceTimeField& SpaceTimeField::operator*=(Complex c) {
  for (auto& x : data_) x *= c;
  return *this;
}

double norm_Hbs(const SpaceTimeField& f, double b, double s) {
  return space_time_norm(f, b, s, [](int, int, std::vector<Complex>&) {});
}

double norm_Xibs(Branch branch, const SpaceTimeField& f, double b, double s, const SymbolTable& tab) {
  if (!(tab.grid() == f.grid())) throw std::invalid_argument("norm_Xibs: grid mismatch");
  const TimeGrid& tg = f.time();
  return space_time_norm(f, b, s, [&](int p, int q, std::vector<Complex>& series) {
    // Sampling the transform at tau_m + omega is the plain transform of the
    // series modulated by exp(i omega t).
    const double w = tab.at(p, q).omega_of(branch);
    for (int n = 0; n < tg.nt(); ++n) series[n] *= std::exp(kI * (w * tg.t(n)));
  });
}

SpaceTimeField propagate_slicewise(const SpaceTimeField& f, Branch branch, const SymbolTable& tab, double sign) {
  const Grid2D& g = f.grid();
  if (!(tab.grid() == g)) throw std::invalid_argument("propagate_slicewise: grid mismatch");
  SpaceTimeField out = f;
  for (int n = 0; n < f.time().nt(); ++n) {
    const double t = sign * f.time().t(n);
    for (int q = 0; q < g.ny(); ++q) {
      for (int p = 0; p < g.nx(); ++p) out.at(n, p, q) *= std::exp(-kI * (tab.at(p, q).omega_of(branch) * t));
    }
  }
  return out;
}

SpaceTimeField cutoff_free_solution(const SpectralField& w0, Branch branch, const SymbolTable& tab,
                                    const TimeGrid& tg, double T) {
  const Grid2D& g = w0.grid();
  SpaceTimeField out(g, tg);
  for (int n = 0; n < tg.nt(); ++n) {
    const double t = tg.t(n);
    const double cut = bump_T(t, T);
    if (cut == 0.0) continue;
    for (int q = 0; q < g.ny(); ++q) {
      for (int p = 0; p < g.nx(); ++p) {
        out.at(n, p, q) = cut * std::exp(-kI * (tab.at(p, q).omega_of(branch) * t)) * w0.at(p, q);
      }
    }
  }
  return out;
}

FreeEstimateReport verify_free_estimate(const std::vector<StateW>& samples, double b, double s,
                                        const SymbolTable& tab, const TimeGrid& tg) {
  if (samples.empty()) throw std::invalid_argument("verify_free_estimate: no samples");
  FreeEstimateReport rep;
  std::vector<Complex> psi(tg.nt());
  for (int n = 0; n < tg.nt(); ++n) psi[n] = bump_eval(tg.t(n));
  rep.psi_norm = norm_Hb(psi, b, tg.lt());

  for (const auto& w : samples) {
    for (Branch br : {Branch::One, Branch::Two}) {
      const SpectralField& w0 = w.component(br);
      const double rhs = norm_Zs(w0, s);
      if (rhs == 0.0) throw std::invalid_argument("verify_free_estimate: sample has zero Z^s norm");
      const double lhs = norm_Xibs(br, cutoff_free_solution(w0, br, tab, tg), b, s, tab);
      rep.ratios.push_back(lhs / rhs);
    }
  }
  rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  rep.spread = (rep.max_ratio - rep.min_ratio) / rep.min_ratio;
  rep.bounded = rep.max_ratio <= 1.2 * rep.psi_norm;
  return rep;
}

SpaceTimeField build_forcing(const Forcing& forcing, const SymbolTable& tab, const TimeGrid& tg) {
  const Grid2D& g = tab.grid();
  SpaceTimeField out(g, tg);
  for (const auto& m : forcing.modes) {
    if (!(m.width > 0.0)) throw std::invalid_argument("forcing width must be positive");
    const int p = g.column_of(m.j);
    const int q = g.row_of(m.k);
    const double w = tab.at(p, q).omega_of(forcing.branch) + m.detuning;
    for (int n = 0; n < tg.nt(); ++n) {
      const double t = tg.t(n);
      const double d = (t - m.center) / m.width;
      out.at(n, p, q) += m.amplitude * std::exp(-0.5 * d * d) * std::exp(-kI * (w * t));
    }
  }
  return out;
}

SpaceTimeField truncated_duhamel(const SpaceTimeField& F, Branch branch, const SymbolTable& tab, double T) {
  const Grid2D& g = F.grid();
  const TimeGrid& tg = F.time();
  SpaceTimeField out(g, tg);
  std::vector<Complex> cut(tg.nt());
  for (int n = 0; n < tg.nt(); ++n) cut[n] = bump_T(tg.t(n), T);
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      auto series = F.series(p, q);
      if (all_zero(series)) continue;
      const double w = tab.at(p, q).omega_of(branch);
      for (int n = 0; n < tg.nt(); ++n) series[n] *= std::exp(kI * (w * tg.t(n)));
      auto prim = antiderivative_from_zero(series, tg);
      for (int n = 0; n < tg.nt(); ++n) prim[n] *= cut[n] * std::exp(-kI * (w * tg.t(n)));
      out.set_series(p, q, prim);
    }
  }
  return out;
}

DuhamelReport verify_duhamel_scaling(const Forcing& forcing, double eps, double s, std::span<const double> Ts,
                                     const SymbolTable& tab, int nt) {
  if (!(eps > 0.0 && eps < 0.25)) throw std::invalid_argument("verify_duhamel_scaling: eps must lie in (0, 1/4)");
  if (Ts.size() < 2) throw std::invalid_argument("verify_duhamel_scaling: need at least two T values");
  const double b = 0.5 + eps;
  const double bp = 0.5 - 2.0 * eps;
  DuhamelReport rep;
  rep.name = forcing.name;
  std::vector<double> lhs_values;
  for (double T : Ts) {
    const TimeGrid tg = TimeGrid::make(nt, time_window(T));
    const SpaceTimeField F = build_forcing(forcing, tab, tg);
    const double rhs = norm_Xibs(forcing.branch, F, -bp, s, tab);
    if (rhs == 0.0) throw std::invalid_argument("verify_duhamel_scaling: forcing has zero norm");
    const double lhs = norm_Xibs(forcing.branch, truncated_duhamel(F, forcing.branch, tab, T), b, s, tab);
    rep.samples.push_back({T, lhs, rhs, lhs / (std::pow(T, eps) * rhs)});
    lhs_values.push_back(lhs);
  }
  const auto [lo, hi] = std::minmax_element(rep.samples.begin(), rep.samples.end(),
                                            [](const auto& a, const auto& c) { return a.ratio < c.ratio; });
  rep.ratio_spread = hi->ratio / lo->ratio;
  rep.slope = fit_loglog_slope(Ts, lhs_values);
  rep.passed = rep.slope >= eps - 0.1 && rep.ratio_spread <= 10.0;
  return rep;
}

double scalar_duhamel_norm(const std::function<Complex(double)>& f, double T, double b, int nt) {
  const TimeGrid tg = TimeGrid::make(nt, time_window(T));
  std::vector<Complex> samples(nt);
  for (int n = 0; n < nt; ++n) samples[n] = f(tg.t(n));
  auto prim = antiderivative_from_zero(samples, tg);
  for (int n = 0; n < nt; ++n) prim[n] *= bump_T(tg.t(n), T);
  return norm_Hb(prim, b, tg.lt());
}

double psi_T_norm(double T, double b, int nt) {
  const TimeGrid tg = TimeGrid::make(nt, time_window(T));
  std::vector<Complex> samples(nt);
  for (int n = 0; n < nt; ++n) samples[n] = bump_T(tg.t(n), T);
  return norm_Hb(samples, b, tg.lt());
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog_slope: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit_loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: x values must differ");
  return sxy / sxx;
}

std::vector<double> log_space(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_space: need 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

}  // namespace nonkp
