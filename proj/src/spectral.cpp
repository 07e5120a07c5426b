#include "nonkp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "nonkp/fft.hpp"

namespace nonkp {
namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("spectral fields live on different grids");
}

std::vector<Complex> forward_normalized(const Grid2D& grid, std::vector<Complex> data) {
  const int shape[] = {grid.ny(), grid.nx()};
  fft::execute(data, shape, fft::Direction::Forward);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : data) c *= scale;
  return data;
}

}  // namespace

Grid2D Grid2D::make(int nx, int ny, double lx, double ly) {
  if (nx < 4 || ny < 4) throw std::invalid_argument("grid sizes must be >= 4");
  if (nx % 2 != 0 || ny % 2 != 0) throw std::invalid_argument("grid sizes must be even");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
    throw std::invalid_argument("domain lengths must be positive and finite");
  }
  return Grid2D(nx, ny, lx, ly);
}

Grid2D make_grid(int nx, int ny, double lx, double ly) { return Grid2D::make(nx, ny, lx, ly); }

double Grid2D::xi(int p) const { return 2.0 * std::numbers::pi * index_x(p) / lx_; }
double Grid2D::mu(int q) const { return 2.0 * std::numbers::pi * index_y(q) / ly_; }

std::vector<double> Grid2D::xi_values() const {
  std::vector<double> out;
  out.reserve(nx_);
  for (int j = -nx_ / 2; j < nx_ / 2; ++j) out.push_back(2.0 * std::numbers::pi * j / lx_);
  return out;
}

std::vector<double> Grid2D::mu_values() const {
  std::vector<double> out;
  out.reserve(ny_);
  for (int k = -ny_ / 2; k < ny_ / 2; ++k) out.push_back(2.0 * std::numbers::pi * k / ly_);
  return out;
}

PhysicalField::PhysicalField(const Grid2D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("physical field: expected " + std::to_string(grid.size()) +
                                " samples, got " + std::to_string(values.size()));
  }
}

SpectralField::SpectralField(const Grid2D& grid) : grid_(grid), coeff_(grid.size()) {}

SpectralField::SpectralField(const Grid2D& grid, std::vector<Complex> coeff)
    : grid_(grid), coeff_(std::move(coeff)) {
  if (coeff_.size() != grid_.size()) throw std::invalid_argument("spectral field: shape mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += other.coeff_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= other.coeff_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeff_) c *= scale;
  return *this;
}

SpectralField& SpectralField::axpy(Complex scale, const SpectralField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += scale * other.coeff_[i];
  return *this;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeff_.begin(), coeff_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(Complex scale, SpectralField a) { return a *= scale; }

SpectralField transform(const PhysicalField& field) { return transform(field.grid, field.values); }

SpectralField transform(const Grid2D& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("transform: shape mismatch");
  std::vector<Complex> data(values.begin(), values.end());
  return SpectralField(grid, forward_normalized(grid, std::move(data)));
}

SpectralField transform_complex(const Grid2D& grid, std::span<const Complex> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("transform: shape mismatch");
  return SpectralField(grid, forward_normalized(grid, {values.begin(), values.end()}));
}

std::vector<Complex> inverse_transform_complex(const SpectralField& field) {
  std::vector<Complex> data(field.coeff().begin(), field.coeff().end());
  const int shape[] = {field.grid().ny(), field.grid().nx()};
  fft::execute(data, shape, fft::Direction::Backward);
  return data;
}

PhysicalField inverse_transform(const SpectralField& field) {
  const auto data = inverse_transform_complex(field);
  PhysicalField out(field.grid());
  for (std::size_t i = 0; i < data.size(); ++i) out.values[i] = data[i].real();
  return out;
}

SpectralField apply_symbol(const SpectralField& f, const Symbol& sigma) {
  const Grid2D& g = f.grid();
  SpectralField out(g);
  for (int q = 0; q < g.ny(); ++q) {
    const double mu = g.mu(q);
    for (int p = 0; p < g.nx(); ++p) {
      const Complex s = sigma(g.xi(p), mu);
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw std::domain_error("apply_symbol: non-finite symbol at mode (" +
                                std::to_string(g.index_x(p)) + ", " + std::to_string(g.index_y(q)) + ")");
      }
      out.at(p, q) = s * f.at(p, q);
    }
  }
  return out;
}

SpectralField helmholtz_inverse_Q(const SpectralField& f) {
  return apply_symbol(f, [](double xi, double) { return Complex(1.0 / (1.0 + xi * xi)); });
}

SpectralField dealias_2_3(const SpectralField& f) {
  const Grid2D& g = f.grid();
  SpectralField out = f;
  // |j| > N/3  <=>  3|j| > N, kept in integers.
  for (int q = 0; q < g.ny(); ++q) {
    const bool cut_row = 3 * std::abs(g.index_y(q)) > g.ny();
    for (int p = 0; p < g.nx(); ++p) {
      if (cut_row || 3 * std::abs(g.index_x(p)) > g.nx()) out.at(p, q) = 0.0;
    }
  }
  return out;
}

SpectralField zero_nyquist(SpectralField f) {
  const Grid2D& g = f.grid();
  for (int q = 0; q < g.ny(); ++q) f.at(g.nx() / 2, q) = 0.0;
  for (int p = 0; p < g.nx(); ++p) f.at(p, g.ny() / 2) = 0.0;
  return f;
}

SpectralField derivative_x(const SpectralField& f) {
  return zero_nyquist(apply_symbol(f, [](double xi, double) { return Complex(0.0, xi); }));
}

SpectralField derivative_y(const SpectralField& f) {
  return zero_nyquist(apply_symbol(f, [](double, double mu) { return Complex(0.0, mu); }));
}

SpectralField product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  auto pa = inverse_transform_complex(a);
  const auto pb = inverse_transform_complex(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  return transform_complex(a.grid(), pa);
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.coeff().size(); ++i) sum += (a.coeff()[i] * std::conj(b.coeff()[i])).real();
  return sum * a.grid().lx() * a.grid().ly();
}

double l2_norm(const SpectralField& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double max_abs(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coeff()) m = std::max(m, std::abs(c));
  return m;
}

double max_abs_difference(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeff().size(); ++i) m = std::max(m, std::abs(a.coeff()[i] - b.coeff()[i]));
  return m;
}

double hermitian_defect(const SpectralField& f) {
  const Grid2D& g = f.grid();
  double worst = 0.0;
  for (int q = 0; q < g.ny(); ++q) {
    if (g.is_nyquist_y(q)) continue;
    for (int p = 0; p < g.nx(); ++p) {
      if (g.is_nyquist_x(p)) continue;
      const Complex partner = f.mode(-g.index_x(p), -g.index_y(q));
      worst = std::max(worst, std::abs(partner - std::conj(f.at(p, q))));
    }
  }
  return worst;
}

SpectralField random_smooth_field(const Grid2D& grid, double amplitude, int max_mode, std::uint64_t seed) {
  if (max_mode < 1 || 2 * max_mode >= std::min(grid.nx(), grid.ny())) {
    throw std::invalid_argument("random_smooth_field: max_mode must lie in [1, N/2)");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField c(grid);
  const double width = 0.5 * max_mode;
  for (int k = -max_mode; k <= max_mode; ++k) {
    for (int j = -max_mode; j <= max_mode; ++j) {
      const double envelope = std::exp(-0.5 * (j * j + k * k) / (width * width));
      c.mode(j, k) = envelope * Complex(normal(rng), normal(rng));
    }
  }
  // Real part of the synthesized field keeps the band and enforces Hermitian symmetry.
  auto samples = inverse_transform_complex(c);
  std::vector<double> real(samples.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    real[i] = samples[i].real();
    peak = std::max(peak, std::abs(real[i]));
  }
  if (peak > 0.0) {
    for (auto& r : real) r *= amplitude / peak;
  }
  return transform(grid, real);
}

}  // namespace nonkp
