#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nonkp/spectral.hpp"
#include "support.hpp"

using namespace nonkp;
using testing::pi;

TEST_CASE("make_grid wavenumbers") {
  const Grid2D g = make_grid(4, 4, 2 * pi, 2 * pi);
  const auto xi = g.xi_values();
  REQUIRE(xi.size() == 4);
  CHECK(xi[0] == doctest::Approx(-2.0));
  CHECK(xi[1] == doctest::Approx(-1.0));
  CHECK(xi[2] == doctest::Approx(0.0));
  CHECK(xi[3] == doctest::Approx(1.0));

  const auto xi_half = make_grid(4, 4, pi, pi).xi_values();
  CHECK(xi_half[0] == doctest::Approx(-4.0));
  CHECK(xi_half[1] == doctest::Approx(-2.0));
  CHECK(xi_half[3] == doctest::Approx(2.0));

  CHECK(g.xi(3) == doctest::Approx(-1.0));
  CHECK(g.xi(2) == doctest::Approx(-2.0));
  CHECK(g.is_nyquist_x(2));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(3, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 4, 1, -1), std::invalid_argument);
}

TEST_CASE("transform single modes") {
  const Grid2D g = make_grid(8, 8, 2 * pi, 2 * pi);
  const SpectralField c = testing::field(g, [](double, double) { return 3.5; });
  CHECK(std::abs(c.mode(0, 0) - Complex(3.5)) < 1e-14);
  double others = 0.0;
  for (std::size_t i = 1; i < c.coeff().size(); ++i) others = std::max(others, std::abs(c.coeff()[i]));
  CHECK(others < 1e-14);

  const SpectralField cx = testing::field(g, [](double x, double) { return std::cos(x); });
  CHECK(std::abs(cx.mode(1, 0) - 0.5) < 1e-14);
  CHECK(std::abs(cx.mode(-1, 0) - 0.5) < 1e-14);
  CHECK(std::abs(cx.mode(0, 0)) < 1e-14);
}

TEST_CASE("transform round trip and shape checks") {
  const Grid2D g = make_grid(32, 16, 3.0, 5.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  PhysicalField f(g);
  for (auto& v : f.values) v = U(rng);
  const PhysicalField back = inverse_transform(transform(f));
  CHECK(testing::max_abs_diff(f, back) <= 1e-12);

  std::vector<double> wrong(10);
  CHECK_THROWS_AS(transform(g, wrong), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalField(g, wrong), std::invalid_argument);
}

TEST_CASE("Parseval") {
  const Grid2D g = make_grid(16, 24, 2.0, 7.0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> N(0, 1);
  PhysicalField f(g);
  for (auto& v : f.values) v = N(rng);
  double physical = 0.0;
  for (double v : f.values) physical += v * v;
  physical *= g.cell_area();
  const double spectral = inner_product(transform(f), transform(f));
  CHECK(std::abs(physical - spectral) <= 1e-12 * physical);
}

TEST_CASE("random fields are real and Hermitian") {
  const Grid2D g = make_grid(32, 32, 2 * pi, 2 * pi);
  const SpectralField f = random_smooth_field(g, 0.3, 5, 42);
  CHECK(hermitian_defect(f) < 1e-15);
  const PhysicalField p = inverse_transform(f);
  double peak = 0.0;
  for (double v : p.values) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(max_abs_difference(f, random_smooth_field(g, 0.3, 5, 42)) == 0.0);
  CHECK(max_abs_difference(f, random_smooth_field(g, 0.3, 5, 43)) > 0.0);

  double outside = 0.0;
  for (int q = 0; q < g.ny(); ++q) {
    for (int p = 0; p < g.nx(); ++p) {
      if (std::abs(g.index_x(p)) > 5 || std::abs(g.index_y(q)) > 5) outside = std::max(outside, std::abs(f.at(p, q)));
    }
  }
  CHECK(outside < 1e-15);
}

TEST_CASE("apply_symbol") {
  const Grid2D g = make_grid(16, 16, 2 * pi, 2 * pi);
  const SpectralField c = testing::field(g, [](double x, double y) { return std::cos(x) + 0.25 * std::sin(2 * y); });

  SUBCASE("identity") {
    CHECK(max_abs_difference(apply_symbol(c, [](double, double) { return Complex(1.0); }), c) == 0.0);
  }
  SUBCASE("derivative of cos is -sin") {
    const SpectralField cx = testing::field(g, [](double x, double) { return std::cos(x); });
    const PhysicalField d = inverse_transform(apply_symbol(cx, [](double xi, double) { return Complex(0, xi); }));
    const PhysicalField expect = testing::sample(g, [](double x, double) { return -std::sin(x); });
    CHECK(testing::max_abs_diff(d, expect) < 1e-14);
  }
  SUBCASE("Helmholtz symbol halves cos x") {
    const SpectralField cx = testing::field(g, [](double x, double) { return std::cos(x); });
    const PhysicalField d =
        inverse_transform(apply_symbol(cx, [](double xi, double) { return Complex(1.0 / (1.0 + xi * xi)); }));
    const PhysicalField expect = testing::sample(g, [](double x, double) { return 0.5 * std::cos(x); });
    CHECK(testing::max_abs_diff(d, expect) < 1e-14);
  }
  SUBCASE("composition is the product of symbols") {
    const Symbol s1 = [](double xi, double mu) { return Complex(1.0 + xi, mu); };
    const Symbol s2 = [](double xi, double mu) { return Complex(std::cos(mu), xi * mu); };
    const SpectralField f = random_smooth_field(g, 1.0, 5, 3);
    const SpectralField a = apply_symbol(apply_symbol(f, s2), s1);
    const SpectralField b = apply_symbol(f, [&](double xi, double mu) { return s1(xi, mu) * s2(xi, mu); });
    CHECK(max_abs_difference(a, b) <= 1e-15);
  }
  SUBCASE("odd real symbol keeps Hermitian symmetry") {
    const SpectralField f = random_smooth_field(g, 1.0, 5, 9);
    CHECK(hermitian_defect(derivative_x(f)) < 1e-14);
    CHECK(hermitian_defect(derivative_y(f)) < 1e-14);
  }
  SUBCASE("non-finite symbol is rejected") {
    CHECK_THROWS_AS(apply_symbol(c, [](double xi, double) { return Complex(1.0 / xi); }), std::domain_error);
  }
}

TEST_CASE("helmholtz_inverse_Q") {
  const Grid2D g = make_grid(16, 16, 2 * pi, 2 * pi);
  const SpectralField c = testing::field(g, [](double, double) { return 2.0; });
  CHECK(max_abs_difference(helmholtz_inverse_Q(c), c) == 0.0);

  const SpectralField s2 = testing::field(g, [](double x, double) { return std::sin(2 * x); });
  const PhysicalField q = inverse_transform(helmholtz_inverse_Q(s2));
  CHECK(testing::max_abs_diff(q, testing::sample(g, [](double x, double) { return std::sin(2 * x) / 5.0; })) < 1e-15);

  const SpectralField f = random_smooth_field(g, 1.0, 7, 1);
  const SpectralField back =
      apply_symbol(helmholtz_inverse_Q(f), [](double xi, double) { return Complex(1.0 + xi * xi); });
  CHECK(max_abs_difference(back, f) <= 1e-12 * max_abs(f));

  const SpectralField Qf = helmholtz_inverse_Q(f);
  bool contraction = true;
  for (std::size_t i = 0; i < f.coeff().size(); ++i) contraction &= std::abs(Qf.coeff()[i]) <= std::abs(f.coeff()[i]);
  CHECK(contraction);
}

TEST_CASE("dealias_2_3") {
  const Grid2D g = make_grid(12, 12, 2 * pi, 2 * pi);
  SpectralField inside(g);
  inside.mode(4, -4) = Complex(1.0, 2.0);
  inside.mode(-4, 4) = Complex(1.0, -2.0);
  inside.mode(3, 1) = 0.5;
  CHECK(max_abs_difference(dealias_2_3(inside), inside) == 0.0);

  SpectralField nyq(g);
  nyq.mode(-6, 0) = 1.0;
  nyq.mode(2, -6) = 1.0;
  CHECK(max_abs(dealias_2_3(nyq)) == 0.0);

  SpectralField edge(g);
  edge.mode(5, 0) = 1.0;
  CHECK(max_abs(dealias_2_3(edge)) == 0.0);

  const Grid2D g2 = make_grid(32, 32, 2 * pi, 2 * pi);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N(0, 1);
  PhysicalField f(g2);
  for (auto& v : f.values) v = N(rng);
  const SpectralField once = dealias_2_3(transform(f));
  CHECK(max_abs_difference(dealias_2_3(once), once) == 0.0);
}

TEST_CASE("product of band-limited fields is exact") {
  const Grid2D g = make_grid(16, 16, 2 * pi, 2 * pi);
  const SpectralField a = testing::field(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  const SpectralField b = testing::field(g, [](double x, double) { return std::sin(2 * x); });
  const PhysicalField ab = inverse_transform(product(a, b));
  const PhysicalField expect =
      testing::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y) * std::sin(2 * x); });
  CHECK(testing::max_abs_diff(ab, expect) < 1e-15);
}
