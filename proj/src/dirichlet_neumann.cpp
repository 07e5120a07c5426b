#include "nonkp/dirichlet_neumann.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "nonkp/fft.hpp"

namespace nonkp::dn {
namespace {

constexpr Complex kI{0.0, 1.0};

using Symbol1D = std::function<Complex(double k)>;

Field1D apply(const Field1D& f, const Symbol1D& sigma, bool odd = false) {
  Field1D out(f.grid);
  for (int p = 0; p < f.grid.n(); ++p) out.coeff[p] = sigma(f.grid.k(p)) * f.coeff[p];
  if (odd) out.coeff[f.grid.n() / 2] = 0.0;
  return out;
}

double tanh_depth(double k, double h0) { return std::tanh(std::abs(k) * h0); }

Field1D abs_D_power(const Field1D& f, int power, bool with_tanh, double h0) {
  return apply(f, [=](double k) {
    const double a = std::abs(k);
    return Complex(std::pow(a, power) * (with_tanh ? tanh_depth(k, h0) : 1.0));
  });
}

/// D |D|^{power-1}, zero at k = 0.
Field1D signed_D_power(const Field1D& f, int power, bool with_tanh, double h0) {
  return apply(
      f,
      [=](double k) {
        if (k == 0.0) return Complex(0.0);
        return Complex(k * std::pow(std::abs(k), power - 1) * (with_tanh ? tanh_depth(k, h0) : 1.0));
      },
      true);
}

Field1D D(const Field1D& f) {
  return apply(f, [](double k) { return Complex(k); }, true);
}

Field1D dx(const Field1D& f) {
  return apply(f, [](double k) { return kI * k; }, true);
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

class Recursion {
 public:
  explicit Recursion(const DNExpansion& e) : exp_(e) {
    Field1D eta = transform(e.grid, e.eta);
    Field1D one(e.grid);
    one.mode(0) = 1.0;
    powers_.push_back(one);
    for (int j = 1; j <= std::max(e.order, 1); ++j) powers_.push_back(padded_product(powers_.back(), eta));
  }

  Field1D apply_G(int j, const Field1D& phi) const {
    const double h0 = exp_.h0;
    if (j == 0) return G0_apply(phi, h0);
    const bool even = j % 2 == 0;
    const Field1D& eta_j = powers_[j];
    Field1D out = padded_product(eta_j, abs_D_power(phi, j + 1, even, h0));
    out = out - kI * padded_product(dx(eta_j), signed_D_power(phi, j, even, h0));
    out = (1.0 / factorial(j)) * out;
    for (int nu = 0; nu < j; ++nu) {
      const int m = j - nu;
      const Field1D inner = padded_product(powers_[m], abs_D_power(phi, m, m % 2 == 1, h0));
      out = out - (1.0 / factorial(m)) * apply_G(nu, inner);
    }
    return out;
  }

 private:
  const DNExpansion& exp_;
  std::vector<Field1D> powers_;
};

}  // namespace

Grid1D Grid1D::make(int n, double length) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("1D grid: n must be even and >= 4");
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("1D grid: length must be positive");
  return Grid1D(n, length);
}

double Grid1D::k(int p) const { return 2.0 * std::numbers::pi * index(p) / length_; }

Field1D::Field1D(const Grid1D& g, std::vector<Complex> c) : grid(g), coeff(std::move(c)) {
  if (static_cast<int>(coeff.size()) != grid.n()) throw std::invalid_argument("Field1D: size mismatch");
}

Field1D transform(const Grid1D& grid, const std::vector<Complex>& samples) {
  if (static_cast<int>(samples.size()) != grid.n()) throw std::invalid_argument("transform: size mismatch");
  std::vector<Complex> c = samples;
  fft::forward_1d(c);
  for (auto& x : c) x /= static_cast<double>(grid.n());
  return Field1D(grid, std::move(c));
}

Field1D transform(const Grid1D& grid, const std::vector<double>& samples) {
  return transform(grid, std::vector<Complex>(samples.begin(), samples.end()));
}

std::vector<Complex> inverse_transform(const Field1D& f) {
  std::vector<Complex> s = f.coeff;
  fft::backward_1d(s);
  return s;
}

Field1D operator+(Field1D a, const Field1D& b) {
  for (std::size_t i = 0; i < a.coeff.size(); ++i) a.coeff[i] += b.coeff[i];
  return a;
}

Field1D operator-(Field1D a, const Field1D& b) {
  for (std::size_t i = 0; i < a.coeff.size(); ++i) a.coeff[i] -= b.coeff[i];
  return a;
}

Field1D operator*(Complex c, Field1D a) {
  for (auto& x : a.coeff) x *= c;
  return a;
}

Field1D padded_product(const Field1D& a, const Field1D& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("padded_product: grid mismatch");
  const int n = a.grid.n();
  const int m = 2 * n;
  std::vector<Complex> pa(m), pb(m);
  for (int p = 0; p < n; ++p) {
    const int j = a.grid.index(p);
    const int slot = j >= 0 ? j : j + m;
    pa[slot] = a.coeff[p];
    pb[slot] = b.coeff[p];
  }
  fft::backward_1d(pa);
  fft::backward_1d(pb);
  for (int i = 0; i < m; ++i) pa[i] *= pb[i];
  fft::forward_1d(pa);
  Field1D out(a.grid);
  for (int p = 0; p < n; ++p) {
    const int j = a.grid.index(p);
    out.coeff[p] = pa[j >= 0 ? j : j + m] / static_cast<double>(m);
  }
  return out;
}

Complex inner_product(const Field1D& a, const Field1D& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: grid mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.coeff.size(); ++i) s += a.coeff[i] * std::conj(b.coeff[i]);
  return s * a.grid.length();
}

double l2_norm(const Field1D& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

DNExpansion make_expansion(const Grid1D& grid, double h0, int order, std::vector<double> eta) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) throw std::invalid_argument("h0 must be positive");
  if (order < 0) throw std::invalid_argument("expansion order must be >= 0");
  if (static_cast<int>(eta.size()) != grid.n()) throw std::invalid_argument("eta has the wrong number of samples");
  for (double e : eta) {
    if (!std::isfinite(e) || std::abs(e) >= h0) {
      throw std::invalid_argument("eta must stay strictly between -h0 and h0");
    }
  }
  return {h0, grid, order, std::move(eta)};
}

Field1D G0_apply(const Field1D& phi, double h0) {
  return apply(phi, [h0](double k) { return Complex(std::abs(k) * tanh_depth(k, h0)); });
}

Field1D Gj_apply(int j, const DNExpansion& exp, const Field1D& phi) {
  if (j < 0 || j > exp.order) throw std::invalid_argument("Gj_apply: j must lie in [0, order]");
  if (!(phi.grid == exp.grid)) throw std::invalid_argument("Gj_apply: grid mismatch");
  return Recursion(exp).apply_G(j, phi);
}

Field1D dn_apply(const DNExpansion& exp, const Field1D& phi) {
  if (!(phi.grid == exp.grid)) throw std::invalid_argument("dn_apply: grid mismatch");
  const Recursion rec(exp);
  Field1D out = rec.apply_G(0, phi);
  for (int j = 1; j <= exp.order; ++j) out = out + rec.apply_G(j, phi);
  return out;
}

Field1D G1_closed_form(const DNExpansion& exp, const Field1D& phi) {
  const Field1D eta = transform(exp.grid, exp.eta);
  const Field1D a = D(padded_product(eta, D(phi)));
  const Field1D b = G0_apply(padded_product(eta, G0_apply(phi, exp.h0)), exp.h0);
  return a - b;
}

Field1D G2_closed_form(const DNExpansion& exp, const Field1D& phi) {
  const double h0 = exp.h0;
  const Field1D eta = transform(exp.grid, exp.eta);
  const Field1D eta2 = padded_product(eta, eta);
  const Field1D a = D(D(padded_product(eta2, G0_apply(phi, h0))));
  const Field1D b = G0_apply(padded_product(eta2, D(D(phi))), h0);
  const Field1D c = G0_apply(padded_product(eta, G0_apply(padded_product(eta, G0_apply(phi, h0)), h0)), h0);
  return -0.5 * (a + b - 2.0 * c);
}

TraceOracle exact_trace_oracle(const Grid1D& grid, const std::vector<double>& eta, int k_index, double h0) {
  if (static_cast<int>(eta.size()) != grid.n()) throw std::invalid_argument("eta has the wrong number of samples");
  const double k = 2.0 * std::numbers::pi * k_index / grid.length();
  const double ak = std::abs(k);
  const auto eta_x = inverse_transform(dx(transform(grid, eta)));
  std::vector<Complex> phi(grid.n()), g(grid.n());
  for (int p = 0; p < grid.n(); ++p) {
    const Complex wave = std::exp(kI * (k * grid.x(p)));
    const double depth = eta[p] + h0;
    phi[p] = wave * std::cosh(ak * depth);
    g[p] = ak * wave * std::sinh(ak * depth) - eta_x[p].real() * kI * k * wave * std::cosh(ak * depth);
  }
  return {transform(grid, phi), transform(grid, g)};
}

}  // namespace nonkp::dn
