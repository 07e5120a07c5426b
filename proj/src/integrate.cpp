#include "nonkp/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nonkp {
namespace {

constexpr Complex kI{0.0, 1.0};

/// Per-mode phase factors exp(-i omega_i h) for both branches.
struct Phases {
  std::vector<Complex> e1;
  std::vector<Complex> e2;
};

Phases make_phases(const SymbolTable& tab, double h) {
  const Grid2D& g = tab.grid();
  Phases ph{std::vector<Complex>(g.size()), std::vector<Complex>(g.size())};
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      const ModeSymbols& m = tab.at(p, q);
      const std::size_t i = g.index(p, q);
      ph.e1[i] = std::exp(-kI * (m.omega1 * h));
      ph.e2[i] = std::exp(-kI * (m.omega2 * h));
    }
  }
  return ph;
}

void apply_phases(const Phases& ph, SpectralField& a, SpectralField& b) {
  auto ca = a.coeff();
  auto cb = b.coeff();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    ca[i] *= ph.e1[i];
    cb[i] *= ph.e2[i];
  }
}

StateW combine(const StateW& w, double h, const WPair& k) {
  StateW out = w;
  out.w1.axpy(h, k.w1);
  out.w2.axpy(h, k.w2);
  return out;
}

StateUV combine(const StateUV& s, double h, const UVPair& k) {
  StateUV out = s;
  out.u.axpy(h, k.u);
  out.v.axpy(h, k.v);
  return out;
}

template <typename Rhs>
StateUV rk4(const StateUV& s, double dt, Rhs rhs) {
  const UVPair k1 = rhs(s);
  const UVPair k2 = rhs(combine(s, 0.5 * dt, k1));
  const UVPair k3 = rhs(combine(s, 0.5 * dt, k2));
  const UVPair k4 = rhs(combine(s, dt, k3));
  StateUV out = s;
  out.u.axpy(dt / 6.0, k1.u).axpy(dt / 3.0, k2.u).axpy(dt / 3.0, k3.u).axpy(dt / 6.0, k4.u);
  out.v.axpy(dt / 6.0, k1.v).axpy(dt / 3.0, k2.v).axpy(dt / 3.0, k3.v).axpy(dt / 6.0, k4.v);
  out.t = s.t + dt;
  return out;
}

std::string format_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::DiagonalIFRK4:
      return "diagonal-ifrk4";
    case Scheme::PhysicalRK4:
      return "physical-rk4";
    case Scheme::LinearExact:
      return "linear-exact";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "diagonal-ifrk4") return Scheme::DiagonalIFRK4;
  if (name == "physical-rk4") return Scheme::PhysicalRK4;
  if (name == "linear-exact") return Scheme::LinearExact;
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected diagonal-ifrk4, physical-rk4 or linear-exact)");
}

double default_time_step(const Grid2D& grid) {
  return 0.25 * std::min(grid.lx() / grid.nx(), grid.ly() / grid.ny());
}

BlowUpError::BlowUpError(double t, const std::string& detail)
    : std::runtime_error("blow-up at t = " + format_time(t) + ": " + detail), t_(t), detail_(detail) {}

StateW free_propagate(const StateW& w, double dt, const SymbolTable& tab) {
  StateW out = w;
  apply_phases(make_phases(tab, dt), out.w1, out.w2);
  out.t = w.t + dt;
  return out;
}

StateW step_ifrk4(const StateW& w, double dt, const SymbolTable& tab) {
  const Phases half = make_phases(tab, 0.5 * dt);
  auto propagate = [&](StateW x) {
    apply_phases(half, x.w1, x.w2);
    return x;
  };
  auto propagate_pair = [&](WPair x) {
    apply_phases(half, x.w1, x.w2);
    return x;
  };

  const WPair k1 = nonlinear_diagonal(w, tab);
  const WPair k2 = nonlinear_diagonal(propagate(combine(w, 0.5 * dt, k1)), tab);
  const StateW ew = propagate(w);
  const WPair k3 = nonlinear_diagonal(combine(ew, 0.5 * dt, k2), tab);
  const StateW eew = propagate(ew);
  const WPair ek3 = propagate_pair(k3);
  const WPair k4 = nonlinear_diagonal(combine(eew, dt, ek3), tab);

  const WPair eek1 = propagate_pair(propagate_pair(k1));
  WPair mid{k2.w1 + k3.w1, k2.w2 + k3.w2};
  mid = propagate_pair(std::move(mid));

  StateW out = eew;
  out.w1.axpy(dt / 6.0, eek1.w1).axpy(dt / 3.0, mid.w1).axpy(dt / 6.0, k4.w1);
  out.w2.axpy(dt / 6.0, eek1.w2).axpy(dt / 3.0, mid.w2).axpy(dt / 6.0, k4.w2);
  out.t = w.t + dt;
  return out;
}

StateUV step_rk4_physical(const StateUV& s, double dt) { return rk4(s, dt, rhs_physical); }

StateUV step_rk4_linearized(const StateUV& s, double dt) { return rk4(s, dt, rhs_linearized); }

StateUV project_nyquist(const StateUV& s) { return {zero_nyquist(s.u), zero_nyquist(s.v), s.t}; }

void check_state(const StateUV& s) {
  if (!s.u.all_finite() || !s.v.all_finite()) throw BlowUpError(s.t, "non-finite spectral coefficient");
  const PhysicalField u = inverse_transform(s.u);
  double peak = 0.0;
  for (double x : u.values) peak = std::max(peak, std::abs(x));
  if (!std::isfinite(peak)) throw BlowUpError(s.t, "non-finite value of u");
  if (peak > blow_up_threshold) {
    std::ostringstream os;
    os.precision(17);
    os << "max|u| = " << peak << " exceeds " << blow_up_threshold;
    throw BlowUpError(s.t, os.str());
  }
}

Trajectory run(const RunConfig& cfg, const StateUV& initial) {
  if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (!std::isfinite(cfg.dt)) throw std::invalid_argument("dt must be finite");
  if (cfg.snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
  if (cfg.diagnostics_stride < 1) throw std::invalid_argument("diagnostics_stride must be >= 1");
  if (!initial.u.all_finite() || !initial.v.all_finite()) {
    throw std::invalid_argument("initial data contains non-finite values");
  }
  const Grid2D& grid = initial.u.grid();
  if (!(initial.v.grid() == grid)) throw std::invalid_argument("u and v must share one grid");

  const double dt_target = cfg.dt > 0.0 ? cfg.dt : default_time_step(grid);
  const long steps = cfg.t_end > 0.0 ? std::max(1L, static_cast<long>(std::ceil(cfg.t_end / dt_target - 1e-9))) : 0;
  const double dt = steps > 0 ? cfg.t_end / static_cast<double>(steps) : dt_target;

  Trajectory traj;
  traj.scheme = cfg.scheme;
  traj.dt = dt;

  const SymbolTable tab(grid);
  const double t0 = initial.t;
  StateUV state = project_nyquist(initial);
  const StateW w0 = to_diagonal(state, tab);
  StateW w = w0;

  auto record = [&](long n, const StateUV& s) {
    if (n % cfg.snapshot_stride == 0 || n == steps) traj.snapshots.push_back(s);
    if (n % cfg.diagnostics_stride == 0 || n == steps) traj.diagnostics.push_back(record_diagnostics(s));
  };
  record(0, state);

  for (long n = 1; n <= steps; ++n) {
    const double t = t0 + static_cast<double>(n) * dt;
    switch (cfg.scheme) {
      case Scheme::DiagonalIFRK4:
        w = step_ifrk4(w, dt, tab);
        w.t = t;
        state = from_diagonal(w, tab);
        break;
      case Scheme::PhysicalRK4:
        state = step_rk4_physical(state, dt);
        state.t = t;
        break;
      case Scheme::LinearExact:
        state = from_diagonal(free_propagate(w0, t - t0, tab), tab);
        state.t = t;
        break;
    }
    check_state(state);
    record(n, state);
  }
  return traj;
}

}  // namespace nonkp
