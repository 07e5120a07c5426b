#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nonkp/bourgain.hpp"
#include "nonkp/dirichlet_neumann.hpp"
#include "support.hpp"

using namespace nonkp;
using namespace nonkp::dn;
using testing::pi;

namespace {

constexpr Complex I{0.0, 1.0};

const Grid1D grid64 = Grid1D::make(64, 2 * pi);

std::vector<double> cosine_eta(const Grid1D& g, double a) {
  std::vector<double> eta(g.n());
  for (int p = 0; p < g.n(); ++p) eta[p] = a * std::cos(g.x(p));
  return eta;
}

/// Random real profile with modes |j| <= band and max amplitude `amp`.
std::vector<double> random_eta(const Grid1D& g, int band, double amp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  std::vector<double> eta(g.n(), 0.0);
  for (int j = 1; j <= band; ++j) {
    const double a = N(rng), b = N(rng);
    for (int p = 0; p < g.n(); ++p) eta[p] += a * std::cos(j * g.x(p)) + b * std::sin(j * g.x(p));
  }
  double peak = 0.0;
  for (double e : eta) peak = std::max(peak, std::abs(e));
  for (double& e : eta) e *= amp / peak;
  return eta;
}

Field1D random_phi(const Grid1D& g, int band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  Field1D f(g);
  for (int j = -band; j <= band; ++j) f.mode(j) = Complex(N(rng), N(rng));
  return f;
}

double max_diff(const Field1D& a, const Field1D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeff.size(); ++i) m = std::max(m, std::abs(a.coeff[i] - b.coeff[i]));
  return m;
}

double max_coeff(const Field1D& a) {
  double m = 0.0;
  for (auto c : a.coeff) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("G0 on plane waves") {
  for (double h0 : {0.3, 1.0, 2.5}) {
    for (int k : {-5, -1, 1, 3, 7}) {
      Field1D phi(grid64);
      phi.mode(k) = 1.0;
      const Field1D g = G0_apply(phi, h0);
      CHECK(std::abs(g.mode(k) - std::abs(k) * std::tanh(std::abs(k) * h0)) <= 1e-12);
    }
  }
  Field1D c(grid64);
  c.mode(0) = 4.0;
  CHECK(max_coeff(G0_apply(c, 1.0)) == 0.0);

  Field1D deep(grid64);
  deep.mode(4) = 1.0;
  CHECK(std::abs(G0_apply(deep, 4.0).mode(4) - 4.0) < 1e-12);

  const Field1D r = random_phi(grid64, 10, 1);
  CHECK(inner_product(G0_apply(r, 1.0), r).real() >= 0.0);
}

TEST_CASE("G1 with constant eta shifts the bottom") {
  const double c = 0.05, h0 = 1.0;
  const DNExpansion e = make_expansion(grid64, h0, 1, std::vector<double>(64, c));
  for (int k : {1, 2, -3}) {
    Field1D phi(grid64);
    phi.mode(k) = 1.0;
    const double sech = 1.0 / std::cosh(k * h0);
    CHECK(std::abs(Gj_apply(1, e, phi).mode(k) - c * k * k * sech * sech) <= 1e-14);
  }
}

TEST_CASE("recursion matches closed forms") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const DNExpansion e = make_expansion(grid64, 1.0, 2, random_eta(grid64, 4, 0.3, seed));
    const Field1D phi = random_phi(grid64, 8, seed + 10);
    CHECK(max_diff(Gj_apply(0, e, phi), G0_apply(phi, 1.0)) == 0.0);
    const Field1D g1 = Gj_apply(1, e, phi);
    CHECK(max_diff(g1, G1_closed_form(e, phi)) <= 1e-10 * max_coeff(g1));
    const Field1D g2 = Gj_apply(2, e, phi);
    CHECK(max_diff(g2, G2_closed_form(e, phi)) <= 1e-10 * max_coeff(g2));
  }
}

TEST_CASE("dn_apply reductions") {
  const Field1D phi = random_phi(grid64, 8, 5);
  const DNExpansion flat = make_expansion(grid64, 1.0, 3, std::vector<double>(64, 0.0));
  CHECK(max_diff(dn_apply(flat, phi), G0_apply(phi, 1.0)) <= 1e-14);
  const DNExpansion order0 = make_expansion(grid64, 1.0, 0, random_eta(grid64, 3, 0.2, 5));
  CHECK(max_diff(dn_apply(order0, phi), G0_apply(phi, 1.0)) == 0.0);
}

TEST_CASE("truncated operator is symmetric") {
  for (int J : {1, 2, 3}) {
    const DNExpansion e = make_expansion(grid64, 1.0, J, random_eta(grid64, 3, 0.2, 40 + J));
    const Field1D a = random_phi(grid64, 6, 1);
    const Field1D b = random_phi(grid64, 6, 2);
    const Complex lhs = inner_product(dn_apply(e, a), b);
    const Complex rhs = inner_product(a, dn_apply(e, b));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("exact trace oracle") {
  const double h0 = 1.0;
  for (int k : {1, 2}) {
    const TraceOracle o = exact_trace_oracle(grid64, std::vector<double>(64, 0.0), k, h0);
    CHECK(std::abs(o.normal_velocity.mode(k) - k * std::sinh(k * h0)) < 1e-12);
    CHECK(max_diff(o.normal_velocity, G0_apply(o.phi, h0)) < 1e-12);
  }
  const TraceOracle flat0 = exact_trace_oracle(grid64, std::vector<double>(64, 0.0), 0, h0);
  CHECK(max_coeff(flat0.normal_velocity) == 0.0);
  CHECK(std::abs(flat0.phi.mode(0) - 1.0) < 1e-15);
}

TEST_CASE("truncation error decays like a^(J+1)") {
  const double h0 = 1.0;
  const std::vector<double> amps{0.01, 0.02, 0.04};
  for (int k : {1, 2}) {
    for (int J : {1, 2, 3}) {
      std::vector<double> errs;
      for (double a : amps) {
        const auto eta = cosine_eta(grid64, a);
        const TraceOracle o = exact_trace_oracle(grid64, eta, k, h0);
        const DNExpansion e = make_expansion(grid64, h0, J, eta);
        errs.push_back(l2_norm(dn_apply(e, o.phi) - o.normal_velocity));
      }
      const double slope = fit_loglog_slope(amps, errs);
      MESSAGE("k=" << k << " J=" << J << " slope " << slope);
      CHECK(std::abs(slope - (J + 1)) <= 0.3);
    }
  }
}

TEST_CASE("expansion validation") {
  CHECK_THROWS_AS(make_expansion(grid64, 0.0, 1, std::vector<double>(64, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(make_expansion(grid64, 1.0, -1, std::vector<double>(64, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(make_expansion(grid64, 1.0, 1, std::vector<double>(64, 1.5)), std::invalid_argument);
  CHECK_THROWS_AS(make_expansion(grid64, 1.0, 1, std::vector<double>(10, 0.0)), std::invalid_argument);
  const DNExpansion e = make_expansion(grid64, 1.0, 1, std::vector<double>(64, 0.0));
  CHECK_THROWS_AS(Gj_apply(2, e, Field1D(grid64)), std::invalid_argument);
  CHECK_THROWS_AS(Grid1D::make(5, 1.0), std::invalid_argument);
}
