#pragma once

#include <vector>

#include "nonkp/spectral.hpp"

namespace nonkp {

/// Physical unknowns (u, v) of the coupled system at time t.
struct StateUV {
  SpectralField u;
  SpectralField v;
  double t = 0.0;
};

struct UVPair {
  SpectralField u;
  SpectralField v;
};

StateUV zero_state(const Grid2D& grid);

/// u_t = -d_x Q(u + u^2/2) - v_y,  v_t = -d_y Q(u + u^2/2).
/// The square is taken of the 2/3-projected field and projected again.
UVPair rhs_physical(const StateUV& s);

/// rhs_physical without the quadratic terms.
UVPair rhs_linearized(const StateUV& s);

/// Integral of v_x^2/2 + v^2/2 + u^2/2 + u^3/6 over the periodic cell.
double hamiltonian(const StateUV& s);

/// (u + P(Pu)^2 / 2, (1 - d_x^2) v), P the 2/3 projection. Exact gradient of
/// hamiltonian() with respect to the L2 pairing.
UVPair grad_H(const StateUV& s);

/// Structure map J = [[-Q d_x, -Q d_y], [-Q d_y, 0]].
UVPair apply_J(const UVPair& g);

/// m(y) = integral of u over x, sampled at the grid rows y_q.
std::vector<double> mass_profile(const StateUV& s);

/// Pairing <a.u, b.u> + <a.v, b.v>.
double inner_product(const UVPair& a, const UVPair& b);

}  // namespace nonkp
