#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nonkp/bourgain.hpp"
#include "support.hpp"

using namespace nonkp;
using testing::pi;

namespace {

constexpr Complex I{0.0, 1.0};

std::vector<Complex> sample_series(const TimeGrid& tg, const std::function<Complex(double)>& f) {
  std::vector<Complex> out(tg.nt());
  for (int n = 0; n < tg.nt(); ++n) out[n] = f(tg.t(n));
  return out;
}

SpaceTimeField random_space_time(const Grid2D& g, const TimeGrid& tg, std::uint64_t seed) {
  SpaceTimeField f(g, tg);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0, 1);
  for (int n = 0; n < tg.nt(); ++n) {
    for (auto& c : f.slice(n)) c = Complex(N(rng), N(rng));
  }
  return f;
}

}  // namespace

TEST_CASE("bump function") {
  CHECK(bump_eval(0.0) == 1.0);
  CHECK(bump_eval(1.0) == 1.0);
  CHECK(bump_eval(2.5) == 0.0);
  CHECK(bump_eval(-2.5) == 0.0);
  CHECK(bump_eval(2.0) == 0.0);
  CHECK(bump_eval(1.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bump_eval(-1.3) == bump_eval(1.3));
  double prev = 1.0;
  bool monotone = true;
  for (int i = 0; i <= 1000; ++i) {
    const double v = bump_eval(1.0 + i / 1000.0);
    monotone &= v <= prev;
    prev = v;
  }
  CHECK(monotone);
  CHECK(bump_T(3.0, 2.0) == doctest::Approx(bump_eval(1.5)));
  CHECK_THROWS_AS(bump_T(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("temporal transforms") {
  const TimeGrid tg = TimeGrid::make(64, 8.0);
  CHECK(tg.t(0) == doctest::Approx(-4.0));
  CHECK(tg.tau(1) == doctest::Approx(2 * pi / 8));
  CHECK(tg.tau(63) == doctest::Approx(-2 * pi / 8));

  const auto f = sample_series(tg, [&](double t) { return std::exp(-I * tg.tau(3) * t); });
  const auto c = temporal_coefficients(f, tg);
  CHECK(std::abs(c[3] - 1.0) < 1e-14);
  CHECK(std::abs(c[61]) < 1e-14);
  const auto back = temporal_synthesis(c, tg);
  for (int n = 0; n < tg.nt(); ++n) CHECK(std::abs(back[n] - f[n]) < 1e-13);
}

TEST_CASE("spectral antiderivative") {
  const TimeGrid tg = TimeGrid::make(1024, 16.0);
  const auto f = sample_series(tg, [](double t) { return Complex(std::exp(-t * t)); });
  const auto F = antiderivative_from_zero(f, tg);
  double err = 0.0;
  for (int n = 0; n < tg.nt(); ++n) err = std::max(err, std::abs(F[n] - 0.5 * std::sqrt(pi) * std::erf(tg.t(n))));
  CHECK(err < 1e-12);

  const auto ones = sample_series(tg, [](double) { return Complex(2.0); });
  const auto lin = antiderivative_from_zero(ones, tg);
  for (int n = 0; n < tg.nt(); ++n) CHECK(std::abs(lin[n] - 2.0 * tg.t(n)) < 1e-12);
}

TEST_CASE("norm_Hb") {
  std::vector<Complex> zero(16);
  CHECK(norm_Hb(zero, 0.6, 1.0) == 0.0);

  const TimeGrid unit = TimeGrid::make(32, 1.0);
  const double tau0 = unit.tau(5);
  const auto mode = sample_series(unit, [&](double t) { return std::exp(-I * tau0 * t); });
  CHECK(norm_Hb(mode, 0.6, 1.0) == doctest::Approx(std::pow(japanese(tau0), 0.6)).epsilon(1e-13));

  const TimeGrid tg = TimeGrid::make(256, 8.0);
  const auto psi = sample_series(tg, [](double t) { return Complex(bump_eval(t)); });
  std::vector<Complex> scaled(psi);
  for (auto& x : scaled) x *= Complex(-3.0, 4.0);
  CHECK(norm_Hb(scaled, 0.6, 8.0) == doctest::Approx(5.0 * norm_Hb(psi, 0.6, 8.0)).epsilon(1e-12));
  CHECK(norm_Hb(psi, 0.7, 8.0) >= norm_Hb(psi, 0.6, 8.0));
  // b = 0 is the L2 norm of the samples (Plancherel).
  double l2 = 0.0;
  for (auto x : psi) l2 += std::norm(x) * tg.step();
  CHECK(norm_Hb(psi, 0.0, 8.0) == doctest::Approx(std::sqrt(l2)).epsilon(1e-12));
  CHECK_THROWS(norm_Hb(std::vector<Complex>(3), 0.5, 1.0));
}

TEST_CASE("psi_T norm follows T^(1/2-b) for small T") {
  std::vector<double> Ts = log_space(0.01, 0.1, 5), vals;
  for (double T : Ts) vals.push_back(psi_T_norm(T, 0.6, 1 << 16));
  const double slope = fit_loglog_slope(Ts, vals);
  MESSAGE("small-T slope " << slope);
  CHECK(std::abs(slope - (0.5 - 0.6)) <= 0.05);
}

TEST_CASE("norm_Zs") {
  const Grid2D g = make_grid(8, 8, 1.0, 1.0);
  CHECK(norm_Zs(SpectralField(g), 1.0) == 0.0);
  SpectralField f(g);
  f.mode(2, -1) = 1.0;
  const double xi = 2 * pi * 2, mu = -2 * pi;
  const double expect = japanese(xi) * japanese(xi) * std::pow(japanese(std::abs(xi) + std::abs(mu)), 1.5);
  CHECK(norm_Zs(f, 1.5) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(norm_Zs(f, 0.0) == doctest::Approx(japanese(xi) * japanese(xi)).epsilon(1e-13));
  const SpectralField r = random_smooth_field(g, 1.0, 3, 4);
  CHECK(norm_Zs(Complex(0, -2) * r, 1.0) == doctest::Approx(2 * norm_Zs(r, 1.0)).epsilon(1e-12));
  CHECK(norm_Zs(r, 1.2) >= norm_Zs(r, 1.0));
}

TEST_CASE("space-time norms") {
  const Grid2D g = make_grid(4, 4, 1.0, 1.0);
  const SymbolTable tab(g);
  const TimeGrid unit = TimeGrid::make(16, 1.0);

  CHECK(norm_Hbs(SpaceTimeField(g, unit), 0.6, 1.0) == 0.0);
  CHECK(norm_Xibs(Branch::One, SpaceTimeField(g, unit), 0.6, 1.0, tab) == 0.0);

  SUBCASE("single lattice mode") {
    const int j = 1, k = -1, m = 3;
    const double xi = 2 * pi * j, mu = 2 * pi * k;
    const double spatial = japanese(xi) * japanese(xi) * std::pow(japanese(std::abs(xi) + std::abs(mu)), 1.0);
    for (Branch br : {Branch::One, Branch::Two}) {
      const double w = tab.mode(j, k).omega_of(br);
      SpaceTimeField f(g, unit);
      for (int n = 0; n < unit.nt(); ++n) {
        f.at(n, g.column_of(j), g.row_of(k)) = std::exp(-I * (unit.tau(m) + w) * unit.t(n));
      }
      CHECK(norm_Xibs(br, f, 0.6, 1.0, tab) == doctest::Approx(spatial * std::pow(japanese(unit.tau(m)), 0.6)).epsilon(1e-12));
    }
    SpaceTimeField h(g, unit);
    for (int n = 0; n < unit.nt(); ++n) h.at(n, g.column_of(j), g.row_of(k)) = std::exp(-I * unit.tau(m) * unit.t(n));
    CHECK(norm_Hbs(h, 0.6, 1.0) == doctest::Approx(spatial * std::pow(japanese(unit.tau(m)), 0.6)).epsilon(1e-12));
  }

  SUBCASE("X_i norm equals the H^{b,s} norm of S_i(-t) u") {
    const Grid2D g8 = make_grid(8, 8, 2 * pi, 2 * pi);
    const SymbolTable tab8(g8);
    const TimeGrid tg = TimeGrid::make(64, 8.0);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const SpaceTimeField u = random_space_time(g8, tg, seed);
      for (Branch br : {Branch::One, Branch::Two}) {
        const double x = norm_Xibs(br, u, 0.6, 1.0, tab8);
        const double h = norm_Hbs(propagate_slicewise(u, br, tab8, -1.0), 0.6, 1.0);
        CHECK(std::abs(x - h) <= 1e-10 * h);
      }
    }
  }

  SUBCASE("homogeneity and monotonicity") {
    const Grid2D g8 = make_grid(8, 8, 2 * pi, 2 * pi);
    const SymbolTable tab8(g8);
    const TimeGrid tg = TimeGrid::make(32, 8.0);
    const SpaceTimeField u = random_space_time(g8, tg, 9);
    SpaceTimeField v = u;
    v *= Complex(0.6, -0.8);
    CHECK(norm_Hbs(v, 0.4, 0.5) == doctest::Approx(norm_Hbs(u, 0.4, 0.5)).epsilon(1e-12));
    CHECK(norm_Xibs(Branch::Two, v, 0.4, 0.5, tab8) ==
          doctest::Approx(norm_Xibs(Branch::Two, u, 0.4, 0.5, tab8)).epsilon(1e-12));
    CHECK(norm_Hbs(u, 0.5, 0.5) >= norm_Hbs(u, 0.4, 0.5));
    CHECK(norm_Hbs(u, 0.4, 0.6) >= norm_Hbs(u, 0.4, 0.5));
    CHECK(norm_Xibs(Branch::One, u, 0.5, 0.5, tab8) >= norm_Xibs(Branch::One, u, 0.4, 0.5, tab8));
  }
}

TEST_CASE("free estimate factorises through psi") {
  const Grid2D g = make_grid(8, 8, 2 * pi, 2 * pi);
  const SymbolTable tab(g);
  const TimeGrid tg = TimeGrid::make(256, 8.0);

  StateW single{SpectralField(g), SpectralField(g), 0.0};
  single.w1.mode(1, 2) = 1.0;
  single.w2.mode(-2, 1) = Complex(0.0, 2.0);
  const FreeEstimateReport one = verify_free_estimate({single}, 0.6, 1.0, tab, tg);
  CHECK(one.max_ratio == doctest::Approx(one.psi_norm).epsilon(0.05));

  std::vector<StateW> samples;
  for (std::uint64_t seed = 0; seed < 10; ++seed) samples.push_back(to_diagonal(testing::random_state(g, 1.0, 3, seed), tab));
  const FreeEstimateReport rep = verify_free_estimate(samples, 0.6, 1.0, tab, tg);
  CHECK(rep.ratios.size() == 20);
  CHECK(rep.spread <= 0.05);
  CHECK(rep.bounded);

  StateW zero{SpectralField(g), SpectralField(g), 0.0};
  CHECK_THROWS_AS(verify_free_estimate({zero}, 0.6, 1.0, tab, tg), std::invalid_argument);
}

TEST_CASE("Duhamel operator") {
  const Grid2D g = make_grid(4, 4, 2 * pi, 2 * pi);
  const SymbolTable tab(g);
  const TimeGrid tg = TimeGrid::make(1024, 8.0);

  const SpaceTimeField zero(g, tg);
  CHECK(norm_Xibs(Branch::One, truncated_duhamel(zero, Branch::One, tab, 0.5), 0.6, 1.0, tab) == 0.0);

  SUBCASE("free forcing integrates to t S(t) F0") {
    Forcing f{"flat", Branch::One, {{1, 1, 1.0, 0.0, 100.0, 0.0}}};
    const SpaceTimeField F = build_forcing(f, tab, tg);
    const SpaceTimeField D = truncated_duhamel(F, Branch::One, tab, 0.5);
    const int p = g.column_of(1), q = g.row_of(1);
    const double w = tab.at(p, q).omega1;
    double err = 0.0;
    for (int n = 0; n < tg.nt(); ++n) {
      const double t = tg.t(n);
      if (std::abs(t) > 1.0) continue;
      // Width 100 makes the envelope flat to 1e-4 over |t| < 1.
      const Complex expect = bump_T(t, 0.5) * t * std::exp(-I * w * t);
      err = std::max(err, std::abs(D.at(n, p, q) - expect));
    }
    CHECK(err < 1e-4);
  }

  SUBCASE("scaling sweep reports") {
    Forcing f{"gauss", Branch::One, {{1, 0, 1.0, 0.0, 0.5, 2.0}}};
    const auto Ts = log_space(0.05, 5.0, 5);
    const DuhamelReport rep = verify_duhamel_scaling(f, 0.1, 1.0, Ts, tab, 1 << 13);
    CHECK(rep.samples.size() == 5);
    CHECK(rep.ratio_spread >= 1.0);
    CHECK(std::isfinite(rep.slope));
    CHECK_THROWS_AS(verify_duhamel_scaling(f, 0.3, 1.0, Ts, tab, 64), std::invalid_argument);
    Forcing none{"none", Branch::One, {}};
    CHECK_THROWS_AS(verify_duhamel_scaling(none, 0.1, 1.0, Ts, tab, 64), std::invalid_argument);
  }

  SUBCASE("scalar Duhamel") {
    auto f = [](double t) { return Complex(std::exp(-t * t / 0.5)) * std::exp(-2.0 * I * t); };
    CHECK(scalar_duhamel_norm([](double) { return Complex(0.0); }, 0.5, 0.6, 256) == 0.0);
    std::vector<double> Ts = log_space(0.05, 0.5, 4), lhs;
    for (double T : Ts) lhs.push_back(scalar_duhamel_norm(f, T, 0.6, 1 << 14));
    // The bound T^eps ||f||_{H^{-b'}} with eps = b - 1/2 caps the decay rate.
    CHECK(fit_loglog_slope(Ts, lhs) >= 0.1);
  }
}

TEST_CASE("log-log fit") {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -0.7));
  CHECK(fit_loglog_slope(x, y) == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK_THROWS(fit_loglog_slope(std::vector<double>{1}, std::vector<double>{1}));
  const auto ls = log_space(0.1, 10, 3);
  CHECK(ls[1] == doctest::Approx(1.0));
}
