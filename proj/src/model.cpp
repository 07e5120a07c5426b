#include "nonkp/model.hpp"

#include <stdexcept>

#include "nonkp/fft.hpp"

namespace nonkp {
namespace {

void require_shared_grid(const SpectralField& u, const SpectralField& v) {
  if (!(u.grid() == v.grid())) throw std::invalid_argument("u and v must share one grid");
}

/// u + P(Pu)^2 / 2
SpectralField nonlinear_potential(const SpectralField& u) {
  const SpectralField pu = dealias_2_3(u);
  SpectralField g = dealias_2_3(product(pu, pu));
  g *= 0.5;
  g += u;
  return g;
}

SpectralField minus_Q_dx(const SpectralField& f) {
  return zero_nyquist(apply_symbol(f, [](double xi, double) { return Complex(0.0, -xi / (1.0 + xi * xi)); }));
}

SpectralField minus_Q_dy(const SpectralField& f) {
  return zero_nyquist(apply_symbol(f, [](double xi, double mu) { return Complex(0.0, -mu / (1.0 + xi * xi)); }));
}

UVPair rhs_from_potential(const SpectralField& g, const SpectralField& v) {
  SpectralField du = minus_Q_dx(g);
  du -= derivative_y(v);
  return {std::move(du), minus_Q_dy(g)};
}

}  // namespace

StateUV zero_state(const Grid2D& grid) { return {SpectralField(grid), SpectralField(grid), 0.0}; }

UVPair rhs_physical(const StateUV& s) {
  require_shared_grid(s.u, s.v);
  return rhs_from_potential(nonlinear_potential(s.u), s.v);
}

UVPair rhs_linearized(const StateUV& s) {
  require_shared_grid(s.u, s.v);
  return rhs_from_potential(s.u, s.v);
}

double hamiltonian(const StateUV& s) {
  require_shared_grid(s.u, s.v);
  const Grid2D& g = s.u.grid();
  double quadratic = 0.0;
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      const double xi = g.xi(p);
      quadratic += 0.5 * (1.0 + xi * xi) * std::norm(s.v.at(p, q)) + 0.5 * std::norm(s.u.at(p, q));
    }
  }
  quadratic *= g.lx() * g.ly();

  const PhysicalField pu = inverse_transform(dealias_2_3(s.u));
  double cubic = 0.0;
  for (double x : pu.values) cubic += x * x * x;
  cubic *= g.cell_area() / 6.0;
  return quadratic + cubic;
}

UVPair grad_H(const StateUV& s) {
  require_shared_grid(s.u, s.v);
  return {nonlinear_potential(s.u),
          apply_symbol(s.v, [](double xi, double) { return Complex(1.0 + xi * xi); })};
}

UVPair apply_J(const UVPair& g) {
  require_shared_grid(g.u, g.v);
  SpectralField ju = minus_Q_dx(g.u);
  ju += minus_Q_dy(g.v);
  return {std::move(ju), minus_Q_dy(g.u)};
}

std::vector<double> mass_profile(const StateUV& s) {
  const Grid2D& g = s.u.grid();
  std::vector<Complex> column(g.ny());
  for (int q = 0; q < g.ny(); ++q) column[q] = g.lx() * s.u.at(0, q);
  fft::backward_1d(column);
  std::vector<double> m(g.ny());
  for (int q = 0; q < g.ny(); ++q) m[q] = column[q].real();
  return m;
}

double inner_product(const UVPair& a, const UVPair& b) {
  return inner_product(a.u, b.u) + inner_product(a.v, b.v);
}

}  // namespace nonkp
