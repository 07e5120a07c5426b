#include "nonkp/diagonal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nonkp {
namespace {

constexpr Complex kI{0.0, 1.0};

struct Roots {
  double w1;
  double w2;
};

Roots roots(double xi, double mu) {
  const double a = 1.0 + xi * xi;
  const double sd = sqrt_discriminant(xi, mu);
  if (xi >= 0.0) {
    const double w1 = (xi + sd) / (2.0 * a);
    return {w1, w1 > 0.0 ? -mu * mu / (a * w1) : 0.0};
  }
  const double w2 = (xi - sd) / (2.0 * a);
  return {-mu * mu / (a * w2), w2};
}

ModeSymbols make_mode(double xi, double mu) {
  ModeSymbols m;
  const auto [w1, w2] = roots(xi, mu);
  m.omega1 = w1;
  m.omega2 = w2;
  m.sqrt_disc = sqrt_discriminant(xi, mu);
  m.M1 = multiplier_M(Branch::One, xi, mu);
  m.M2 = multiplier_M(Branch::Two, xi, mu);
  m.degenerate = (mu == 0.0);
  if (m.degenerate) {
    const bool swap = xi < 0.0;
    m.P = {{{swap ? 0.0 : 1.0, swap ? 1.0 : 0.0}, {swap ? 1.0 : 0.0, swap ? 0.0 : 1.0}}};
    m.Pinv = m.P;
    return m;
  }
  const double a = 1.0 + xi * xi;
  const double sd = m.sqrt_disc;
  m.P = {{{1.0, 1.0}, {mu / (a * w1), mu / (a * w2)}}};
  m.Pinv = {{{a * w1 / sd, a * mu / sd}, {-a * w2 / sd, -a * mu / sd}}};
  return m;
}

}  // namespace

Branch branch_from_int(int b) {
  if (b == 1) return Branch::One;
  if (b == 2) return Branch::Two;
  throw std::invalid_argument("branch must be 1 or 2, got " + std::to_string(b));
}

double sqrt_discriminant(double xi, double mu) {
  return std::sqrt(xi * xi + 4.0 * mu * mu * (1.0 + xi * xi));
}

double omega(Branch branch, double xi, double mu) {
  const Roots r = roots(xi, mu);
  return branch == Branch::One ? r.w1 : r.w2;
}

Complex multiplier_M(Branch branch, double xi, double mu) {
  const double sd = sqrt_discriminant(xi, mu);
  if (sd == 0.0) return 0.0;
  const Roots r = roots(xi, mu);
  if (branch == Branch::One) return 0.5 * kI * (xi * r.w1 + mu * mu) / sd;
  return -0.5 * kI * (xi * r.w2 + mu * mu) / sd;
}

SymbolTable::SymbolTable(const Grid2D& grid) : grid_(grid), modes_(grid.size()) {
  for (int q = 0; q < grid.ny(); ++q) {
    for (int p = 0; p < grid.nx(); ++p) modes_[grid.index(p, q)] = make_mode(grid.xi(p), grid.mu(q));
  }
}

SymbolTable build_symbol_table(const Grid2D& grid) { return SymbolTable(grid); }

Matrix2 linear_symbol(double xi, double mu) {
  const double a = 1.0 + xi * xi;
  return {{{kI * (-xi / a), kI * (-mu)}, {kI * (-mu / a), 0.0}}};
}

StateW to_diagonal(const StateUV& s, const SymbolTable& tab) {
  const Grid2D& g = tab.grid();
  if (!(s.u.grid() == g) || !(s.v.grid() == g)) throw std::invalid_argument("to_diagonal: grid mismatch");
  StateW w{SpectralField(g), SpectralField(g), s.t};
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      const Matrix2& Pi = tab.at(p, q).Pinv;
      const Complex u = s.u.at(p, q);
      const Complex v = s.v.at(p, q);
      w.w1.at(p, q) = Pi[0][0] * u + Pi[0][1] * v;
      w.w2.at(p, q) = Pi[1][0] * u + Pi[1][1] * v;
    }
  }
  return w;
}

StateUV from_diagonal(const StateW& w, const SymbolTable& tab) {
  const Grid2D& g = tab.grid();
  if (!(w.w1.grid() == g) || !(w.w2.grid() == g)) throw std::invalid_argument("from_diagonal: grid mismatch");
  StateUV s{SpectralField(g), SpectralField(g), w.t};
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      const Matrix2& P = tab.at(p, q).P;
      const Complex a = w.w1.at(p, q);
      const Complex b = w.w2.at(p, q);
      s.u.at(p, q) = P[0][0] * a + P[0][1] * b;
      s.v.at(p, q) = P[1][0] * a + P[1][1] * b;
    }
  }
  return s;
}

WPair nonlinear_diagonal(const StateW& w, const SymbolTable& tab) {
  const Grid2D& g = tab.grid();
  SpectralField u(g);
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      const Matrix2& P = tab.at(p, q).P;
      u.at(p, q) = P[0][0] * w.w1.at(p, q) + P[0][1] * w.w2.at(p, q);
    }
  }
  const SpectralField pu = dealias_2_3(u);
  const SpectralField lambda = dealias_2_3(product(pu, pu));

  WPair out{SpectralField(g), SpectralField(g)};
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      if (g.is_nyquist_x(p) || g.is_nyquist_y(q)) continue;
      const ModeSymbols& m = tab.at(p, q);
      out.w1.at(p, q) = -m.M1 * lambda.at(p, q);
      out.w2.at(p, q) = -m.M2 * lambda.at(p, q);
    }
  }
  return out;
}

WPair rhs_diagonal(const StateW& w, const SymbolTable& tab) {
  const Grid2D& g = tab.grid();
  WPair out = nonlinear_diagonal(w, tab);
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      if (g.is_nyquist_x(p) || g.is_nyquist_y(q)) continue;
      const ModeSymbols& m = tab.at(p, q);
      out.w1.at(p, q) += -kI * m.omega1 * w.w1.at(p, q);
      out.w2.at(p, q) += -kI * m.omega2 * w.w2.at(p, q);
    }
  }
  return out;
}

OperatorSymbols operator_symbols(OperatorFamily family, double xi) {
  switch (family) {
    case OperatorFamily::KP:
      return {1.0 + xi * xi, 1.0, 1.0, 1.0};
    case OperatorFamily::BBM: {
      const double s = xi * xi / 6.0;
      return {(1.0 - s) / (1.0 + s), 1.0, 1.0, std::sqrt(1.0 + s)};
    }
  }
  throw std::invalid_argument("unknown operator family");
}

std::pair<double, double> generalized_dispersion(OperatorFamily family, double U, double xi, double mu) {
  const OperatorSymbols s = operator_symbols(family, xi);
  const double A = -2.0 * U * s.L1 + s.L1 * s.L1 + s.K1;
  const double disc = xi * xi * A * A + 4.0 * mu * mu * s.K2 * (s.L1 * s.L1 + s.K1);
  if (!std::isfinite(A) || !std::isfinite(disc)) {
    throw std::domain_error("generalized_dispersion: non-finite symbol");
  }
  if (disc < 0.0) throw std::domain_error("generalized_dispersion: negative discriminant");
  const double root = std::sqrt(disc);
  return {(xi * A + root) / 4.0, (xi * A - root) / 4.0};
}

}  // namespace nonkp
