#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nonkp/model.hpp"
#include "nonkp/spectral.hpp"

namespace nonkp {

/// Dispersion branch. Branch 1 carries the + root and satisfies omega1 >= omega2.
enum class Branch { One = 1, Two = 2 };

Branch branch_from_int(int b);

/// sqrt(xi^2 + 4 mu^2 (1 + xi^2))
double sqrt_discriminant(double xi, double mu);

/// (xi +- sqrt_discriminant) / (2 (1 + xi^2)). The smaller-magnitude root is
/// obtained from omega1 * omega2 = -mu^2 / (1 + xi^2).
double omega(Branch branch, double xi, double mu);

/// M1 = (i/2)(xi w1 + mu^2)/sd, M2 = -(i/2)(xi w2 + mu^2)/sd; zero at (0,0).
Complex multiplier_M(Branch branch, double xi, double mu);

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

struct ModeSymbols {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double sqrt_disc = 0.0;
  Complex M1;
  Complex M2;
  Matrix2 P{};
  Matrix2 Pinv{};
  /// mu = 0 row (including the zero mode). P is the identity for xi >= 0 and
  /// the swap for xi < 0, so u always sits in the branch with omega = xi/(1+xi^2).
  bool degenerate = false;

  double omega_of(Branch b) const { return b == Branch::One ? omega1 : omega2; }
  Complex M_of(Branch b) const { return b == Branch::One ? M1 : M2; }
};

class SymbolTable {
 public:
  explicit SymbolTable(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  const ModeSymbols& at(int p, int q) const { return modes_[grid_.index(p, q)]; }
  const ModeSymbols& mode(int j, int k) const { return at(grid_.column_of(j), grid_.row_of(k)); }

 private:
  Grid2D grid_;
  std::vector<ModeSymbols> modes_;
};

SymbolTable build_symbol_table(const Grid2D& grid);

/// Linear symbol A_hat = i [[-xi/a, -mu], [-mu/a, 0]], a = 1 + xi^2.
Matrix2 linear_symbol(double xi, double mu);

struct StateW {
  SpectralField w1;
  SpectralField w2;
  double t = 0.0;

  const SpectralField& component(Branch b) const { return b == Branch::One ? w1 : w2; }
  SpectralField& component(Branch b) { return b == Branch::One ? w1 : w2; }
};

struct WPair {
  SpectralField w1;
  SpectralField w2;
};

StateW to_diagonal(const StateUV& s, const SymbolTable& tab);
StateUV from_diagonal(const StateW& w, const SymbolTable& tab);

/// dw_i = -i omega_i w_i - M_i Lambda, Lambda the projected square of u = P w.
WPair rhs_diagonal(const StateW& w, const SymbolTable& tab);

/// The -M_i Lambda part of rhs_diagonal only.
WPair nonlinear_diagonal(const StateW& w, const SymbolTable& tab);

enum class OperatorFamily { KP, BBM };

struct OperatorSymbols {
  double K1;
  double K2;
  double L1;
  double L2;
};

OperatorSymbols operator_symbols(OperatorFamily family, double xi);

/// Both roots of 4w = xi A +- sqrt(xi^2 A^2 + 4 mu^2 K2 (L1^2 + K1)),
/// A = -2 U L1 + L1^2 + K1; the + root first.
std::pair<double, double> generalized_dispersion(OperatorFamily family, double U, double xi, double mu);

}  // namespace nonkp
