#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nonkp {

using Complex = std::complex<double>;

/// Periodic rectangular grid on [0, Lx) x [0, Ly) and its wavenumber lattice.
///
/// Storage order everywhere is row-major with y outer and x inner. Column p
/// holds the signed wavenumber index j = p for p < Nx/2 and j = p - Nx for
/// p >= Nx/2, so the single Nyquist entry carries j = -Nx/2.
class Grid2D {
 public:
  /// Throws std::invalid_argument on odd or tiny sizes and non-positive lengths.
  static Grid2D make(int nx, int ny, double lx, double ly);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int p, int q) const { return static_cast<std::size_t>(q) * nx_ + p; }

  int index_x(int p) const { return p < nx_ / 2 ? p : p - nx_; }
  int index_y(int q) const { return q < ny_ / 2 ? q : q - ny_; }
  /// Storage column for signed index j in [-Nx/2, Nx/2).
  int column_of(int j) const { return j >= 0 ? j : j + nx_; }
  int row_of(int k) const { return k >= 0 ? k : k + ny_; }

  double xi(int p) const;
  double mu(int q) const;
  double x(int p) const { return lx_ * p / nx_; }
  double y(int q) const { return ly_ * q / ny_; }
  double cell_area() const { return lx_ * ly_ / static_cast<double>(size()); }

  bool is_nyquist_x(int p) const { return p == nx_ / 2; }
  bool is_nyquist_y(int q) const { return q == ny_ / 2; }

  /// Wavenumbers 2 pi j / Lx in ascending order of j.
  std::vector<double> xi_values() const;
  std::vector<double> mu_values() const;

  bool operator==(const Grid2D&) const = default;

 private:
  Grid2D(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {}

  int nx_;
  int ny_;
  double lx_;
  double ly_;
};

Grid2D make_grid(int nx, int ny, double lx, double ly);

/// Real samples u(x_p, y_q) on a grid.
struct PhysicalField {
  explicit PhysicalField(const Grid2D& g) : grid(g), values(g.size(), 0.0) {}
  PhysicalField(const Grid2D& g, std::vector<double> v);

  double& at(int p, int q) { return values[grid.index(p, q)]; }
  double at(int p, int q) const { return values[grid.index(p, q)]; }

  Grid2D grid;
  std::vector<double> values;
};

/// Fourier amplitudes of a 2D periodic field.
///
/// The forward transform carries the 1/(Nx Ny) factor, so coeff is the
/// amplitude of e^{i(xi x + mu y)} directly: cos(x) has 1/2 at j = +-1.
class SpectralField {
 public:
  explicit SpectralField(const Grid2D& grid);
  SpectralField(const Grid2D& grid, std::vector<Complex> coeff);

  const Grid2D& grid() const { return grid_; }
  std::span<Complex> coeff() { return coeff_; }
  std::span<const Complex> coeff() const { return coeff_; }

  Complex& at(int p, int q) { return coeff_[grid_.index(p, q)]; }
  const Complex& at(int p, int q) const { return coeff_[grid_.index(p, q)]; }
  /// Access by signed wavenumber indices.
  Complex& mode(int j, int k) { return at(grid_.column_of(j), grid_.row_of(k)); }
  const Complex& mode(int j, int k) const { return at(grid_.column_of(j), grid_.row_of(k)); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);
  /// this += scale * other
  SpectralField& axpy(Complex scale, const SpectralField& other);

  bool all_finite() const;

 private:
  Grid2D grid_;
  std::vector<Complex> coeff_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex scale, SpectralField a);

SpectralField transform(const PhysicalField& field);
SpectralField transform(const Grid2D& grid, std::span<const double> values);
/// Complex samples, for fields that are not real (e.g. single diagonal components).
SpectralField transform_complex(const Grid2D& grid, std::span<const Complex> values);
/// Real part of the synthesized field.
PhysicalField inverse_transform(const SpectralField& field);
std::vector<Complex> inverse_transform_complex(const SpectralField& field);

using Symbol = std::function<Complex(double xi, double mu)>;

/// coeff'[j,k] = sigma(xi_j, mu_k) coeff[j,k]. Throws std::domain_error if
/// sigma is non-finite at any mode.
SpectralField apply_symbol(const SpectralField& f, const Symbol& sigma);

/// Q = (1 - d_x^2)^{-1}: multiplies each mode by 1/(1 + xi^2).
SpectralField helmholtz_inverse_Q(const SpectralField& f);

/// Zeroes every mode with |j| > Nx/3 or |k| > Ny/3. Idempotent.
SpectralField dealias_2_3(const SpectralField& f);

/// Zeroes the Nyquist row and column.
SpectralField zero_nyquist(SpectralField f);

SpectralField derivative_x(const SpectralField& f);
SpectralField derivative_y(const SpectralField& f);

/// Pointwise product formed in physical space; no dealiasing.
SpectralField product(const SpectralField& a, const SpectralField& b);

/// Integral of a * conj(b) over the periodic cell (real part), i.e. the L2
/// pairing for real fields.
double inner_product(const SpectralField& a, const SpectralField& b);
double l2_norm(const SpectralField& f);
double max_abs(const SpectralField& f);
double max_abs_difference(const SpectralField& a, const SpectralField& b);

/// Largest |coeff[-j,-k] - conj(coeff[j,k])| over modes whose partner is on
/// the grid (Nyquist row/column excluded).
double hermitian_defect(const SpectralField& f);

/// Random real field with modes |j|, |k| <= max_mode, scaled so that
/// max |u| = amplitude. Deterministic for a given seed.
SpectralField random_smooth_field(const Grid2D& grid, double amplitude, int max_mode,
                                  std::uint64_t seed);

}  // namespace nonkp
