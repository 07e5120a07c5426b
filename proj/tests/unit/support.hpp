#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "nonkp/diagonal.hpp"
#include "nonkp/model.hpp"
#include "nonkp/spectral.hpp"

namespace testing {

inline constexpr double pi = std::numbers::pi;

inline nonkp::PhysicalField sample(const nonkp::Grid2D& g, const std::function<double(double, double)>& f) {
  nonkp::PhysicalField out(g);
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) out.at(p, q) = f(g.x(p), g.y(q));
  }
  return out;
}

inline nonkp::SpectralField field(const nonkp::Grid2D& g, const std::function<double(double, double)>& f) {
  return nonkp::transform(sample(g, f));
}

inline double max_abs_diff(const nonkp::PhysicalField& a, const nonkp::PhysicalField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

/// Random real state whose modes all lie inside the 2/3 band.
inline nonkp::StateUV random_state(const nonkp::Grid2D& g, double amplitude, int max_mode, std::uint64_t seed) {
  return {nonkp::random_smooth_field(g, amplitude, max_mode, seed),
          nonkp::random_smooth_field(g, amplitude, max_mode, seed + 7919), 0.0};
}

inline double max_diff(const nonkp::UVPair& a, const nonkp::UVPair& b) {
  return std::max(nonkp::max_abs_difference(a.u, b.u), nonkp::max_abs_difference(a.v, b.v));
}

inline double max_diff(const nonkp::StateUV& a, const nonkp::StateUV& b) {
  return std::max(nonkp::max_abs_difference(a.u, b.u), nonkp::max_abs_difference(a.v, b.v));
}

inline double max_diff(const nonkp::StateW& a, const nonkp::StateW& b) {
  return std::max(nonkp::max_abs_difference(a.w1, b.w1), nonkp::max_abs_difference(a.w2, b.w2));
}

inline double max_diff(const nonkp::WPair& a, const nonkp::WPair& b) {
  return std::max(nonkp::max_abs_difference(a.w1, b.w1), nonkp::max_abs_difference(a.w2, b.w2));
}

}  // namespace testing
