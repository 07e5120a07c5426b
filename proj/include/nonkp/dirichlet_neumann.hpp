#pragma once

#include <vector>

#include "nonkp/spectral.hpp"

namespace nonkp::dn {

/// Periodic interval [0, L) with N points (N even).
class Grid1D {
 public:
  static Grid1D make(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  double x(int p) const { return length_ * p / n_; }
  /// Wavenumber of storage slot p (FFT order).
  double k(int p) const;
  int index(int p) const { return p < n_ / 2 ? p : p - n_; }
  int slot_of(int j) const { return j >= 0 ? j : j + n_; }

  bool operator==(const Grid1D&) const = default;

 private:
  Grid1D(int n, double length) : n_(n), length_(length) {}
  int n_;
  double length_;
};

/// Fourier amplitudes of a periodic function of x, coefficient of e^{ikx}.
struct Field1D {
  Grid1D grid;
  std::vector<Complex> coeff;

  explicit Field1D(const Grid1D& g) : grid(g), coeff(g.n()) {}
  Field1D(const Grid1D& g, std::vector<Complex> c);

  Complex& mode(int j) { return coeff[grid.slot_of(j)]; }
  Complex mode(int j) const { return coeff[grid.slot_of(j)]; }
};

Field1D transform(const Grid1D& grid, const std::vector<Complex>& samples);
Field1D transform(const Grid1D& grid, const std::vector<double>& samples);
std::vector<Complex> inverse_transform(const Field1D& f);

Field1D operator+(Field1D a, const Field1D& b);
Field1D operator-(Field1D a, const Field1D& b);
Field1D operator*(Complex c, Field1D a);

/// Product formed on a grid of twice the resolution and truncated back.
Field1D padded_product(const Field1D& a, const Field1D& b);

/// L2 pairing: L sum a conj(b).
Complex inner_product(const Field1D& a, const Field1D& b);
double l2_norm(const Field1D& f);

struct DNExpansion {
  double h0 = 1.0;
  Grid1D grid;
  int order = 0;
  /// Surface elevation samples at grid points.
  std::vector<double> eta;
};

/// Throws std::invalid_argument unless h0 > 0, order >= 0 and max|eta| < h0.
DNExpansion make_expansion(const Grid1D& grid, double h0, int order, std::vector<double> eta);

/// |k| tanh(|k| h0)
Field1D G0_apply(const Field1D& phi, double h0);

/// Homogeneous term of degree j in eta, by recursion on lower terms.
Field1D Gj_apply(int j, const DNExpansion& exp, const Field1D& phi);

/// Sum of G_j Phi for j = 0..order.
Field1D dn_apply(const DNExpansion& exp, const Field1D& phi);

/// D eta D - G0 eta G0 with D = -i d/dx.
Field1D G1_closed_form(const DNExpansion& exp, const Field1D& phi);
/// -(D^2 eta^2 G0 + G0 eta^2 D^2 - 2 G0 eta G0 eta G0) / 2
Field1D G2_closed_form(const DNExpansion& exp, const Field1D& phi);

struct TraceOracle {
  /// Phi_k(x) = e^{ikx} cosh(|k| (eta + h0))
  Field1D phi;
  /// |k| e^{ikx} sinh(|k|(eta+h0)) - eta_x i k e^{ikx} cosh(|k|(eta+h0))
  Field1D normal_velocity;
};

/// Exact harmonic family evaluated at the surface y = eta(x); eta_x spectral.
TraceOracle exact_trace_oracle(const Grid1D& grid, const std::vector<double>& eta, int k_index, double h0);

}  // namespace nonkp::dn
