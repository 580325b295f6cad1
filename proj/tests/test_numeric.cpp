#include <cmath>

#include "doctest.h"
#include "qcarpet/error.hpp"
#include "qcarpet/numeric.hpp"
#include "qcarpet/ode.hpp"
#include "support.hpp"

using namespace qcarpet;

TEST_CASE("gauss-legendre rule integrates polynomials of degree 31 exactly") {
  const auto& rule = detail::gauss_legendre_16();
  REQUIRE(rule.nodes.size() == 16);
  for (int d = 0; d <= 31; ++d) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 16; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], d);
    const double exact = d % 2 == 0 ? 2.0 / (d + 1) : 0.0;
    CHECK(sum == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("adaptive quadrature on smooth and oscillatory integrands") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::cos(200.0 * x); }, 0.0, kPi) == doctest::Approx(0.0).epsilon(1e-12));
  const auto c = integrate([](double x) { return std::exp(complex(0.0, 3.0 * x)); }, 0.0, 1.0);
  const complex exact = (std::exp(complex(0.0, 3.0)) - 1.0) / complex(0.0, 3.0);
  CHECK(std::abs(c - exact) < 1e-13);
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0) == 0.0);
}

TEST_CASE("breakpoints make kinks harmless") {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const double exact = 0.5 * 0.09 + 0.5 * 0.49;
  CHECK(integrate_pieces(f, 0.0, 1.0, {0.3}) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("non-convergence raises a quadrature error") {
  QuadratureOptions q;
  q.max_panels = 8;
  q.rel_tol = 1e-15;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1000.0 * x * x); }, 0.0, 3.0, q), QuadratureError);
}

TEST_CASE("pairwise summation is accurate for long runs") {
  std::vector<double> v(1 << 20, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(0.1 * (1 << 20)).epsilon(1e-14));
  CHECK(parity_sign(-3) == -1.0);
  CHECK(parity_sign(4) == 1.0);
}

TEST_CASE("Bessel J_n matches the standard library") {
  testing::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const int n = rng.integer(0, 30);
    const double x = rng.uniform(0.0, 40.0);
    CHECK(bessel_j(n, x) == doctest::Approx(std::cyl_bessel_j(n, x)).epsilon(1e-12).scale(1.0));
  }
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  // negative order and argument symmetries
  CHECK(bessel_j(-3, 1.7) == doctest::Approx(-bessel_j(3, 1.7)));
  CHECK(bessel_j(2, -1.7) == doctest::Approx(bessel_j(2, 1.7)));
  CHECK(bessel_j(3, -1.7) == doctest::Approx(-bessel_j(3, 1.7)));
}

TEST_CASE("Bessel J_n agrees with its integral representation") {
  for (int n : {0, 1, 4, 9})
    for (double x : {0.3, 2.0, 7.5}) {
      const double integral =
          integrate([&](double tau) { return std::cos(n * tau - x * std::sin(tau)); }, 0.0, kPi) / kPi;
      CHECK(bessel_j(n, x) == doctest::Approx(integral).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("ode integrator: exponential decay and harmonic motion") {
  {
    auto r = integrate_ode([](double, double x) { return -x; }, 0.0, 1.0, 2.0, -10.0, 10.0);
    CHECK(r.x.back() == doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
    CHECK(r.t.back() == doctest::Approx(2.0));
    CHECK_FALSE(r.exit_time.has_value());
  }
  {
    // x' = sqrt(1 - x^2) from x = 0 reaches x = 0.9 at t = asin(0.9)
    auto r = integrate_ode([](double, double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }, 0.0, 0.0, 5.0,
                           -0.9, 0.9);
    REQUIRE(r.exit_time.has_value());
    CHECK(*r.exit_time == doctest::Approx(std::asin(0.9)).epsilon(1e-7));
  }
  {
    // backward integration
    auto r = integrate_ode([](double, double x) { return x; }, 1.0, 2.0, -1.0, -100.0, 100.0);
    CHECK(r.x.back() == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-8));
  }
}
