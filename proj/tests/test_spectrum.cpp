#include <cmath>

#include "doctest.h"
#include "qcarpet/analytic.hpp"
#include "qcarpet/error.hpp"
#include "qcarpet/spectrum.hpp"
#include "support.hpp"

using namespace qcarpet;

TEST_CASE("signed extension of the amplitudes") {
  const EnergySpectrum one({}, {complex(1.0, 0.0)});
  CHECK(extended_amplitude(one, -1) == complex(-1.0, 0.0));
  CHECK(extended_amplitude(one, 0) == complex(0.0, 0.0));
  CHECK(extended_amplitude(one, 2) == complex(0.0, 0.0));
  const auto uni = analytic::uniform_spectrum(21);
  CHECK(extended_amplitude(uni, -3).real() == doctest::Approx(-2.0 * std::sqrt(2.0) / (3.0 * kPi)));
}

TEST_CASE("spectrum of the ground state is a single mode") {
  const double L = 1.7;
  InitialWavefunction psi0{[L](double x) { return complex(std::sqrt(2.0 / L) * std::sin(kPi * x / L), 0.0); }};
  const auto spec = spectrum_from_initial(psi0, BoxConfig{L, 1.0}, 12);
  CHECK(std::abs(spec.amplitudes()[0] - 1.0) < 1e-10);
  for (int n = 2; n <= 12; ++n) CHECK(std::abs(spec.amplitudes()[n - 1]) < 1e-10);
  CHECK(spec.normalized());
}

TEST_CASE("spectrum of the uniform wavefunction") {
  const auto spec = spectrum_from_initial(analytic::uniform_wavefunction(), {}, 31);
  for (int n = 1; n <= 31; ++n) {
    const double expected = n % 2 ? 2.0 * std::sqrt(2.0) / (n * kPi) : 0.0;
    CHECK(std::abs(spec.amplitudes()[n - 1] - expected) < 1e-10);
  }
}

TEST_CASE("Gaussian amplitudes against the closed-form momentum transform") {
  const BoxConfig cfg;
  const double c = 1.0 / 3.0, s = 1.0 / 40.0, p = 15.0 * kPi;
  const auto spec = analytic::gaussian_spectrum(c, s, p, 64, cfg);
  double worst = 0.0;
  for (int n = 1; n <= 64; ++n) {
    const double pn = n * kPi;
    const complex oracle = complex(0.0, std::sqrt(kPi)) * (analytic::gaussian_momentum_amplitude(c, s, p, pn) -
                                                           analytic::gaussian_momentum_amplitude(c, s, p, -pn));
    worst = std::max(worst, std::abs(spec.amplitudes()[n - 1] - oracle));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("single mode: value at the centre, wall node and stationary density") {
  const double L = 2.0;
  const EnergySpectrum one(BoxConfig{L, 0.7}, {complex(1.0, 0.0)});
  CHECK(std::abs(evaluate_wavefunction(one, L / 2, 0.0)) == doctest::Approx(std::sqrt(2.0 / L)));
  testing::Rng rng(3);
  for (int i = 0; i < 20; ++i) CHECK(std::abs(evaluate_wavefunction(one, 0.0, rng.uniform(0.0, 10.0))) < 1e-15);
  for (int n : {1, 4, 9}) {
    const auto spec = analytic::eigenstate_spectrum(n, 0, BoxConfig{L, 0.7});
    for (int i = 0; i < 20; ++i) {
      const double x = rng.uniform(0.0, L), t = rng.uniform(0.0, 20.0);
      CHECK(probability_density(spec, x, t) ==
            doctest::Approx(2.0 / L * std::pow(std::sin(n * kPi * x / L), 2)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("revival periodicity and unitarity at random points") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const BoxConfig cfg{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
    const EnergySpectrum spec(cfg, rng.amplitudes(rng.integer(1, 60)));
    for (int i = 0; i < 10; ++i) {
      const double x = rng.uniform(0.0, cfg.length), t = rng.uniform(0.0, 5.0);
      CHECK(probability_density(spec, x, t + cfg.revival_period()) ==
            doctest::Approx(probability_density(spec, x, t)).epsilon(1e-11));
      CHECK(std::abs(evaluate_wavefunction(spec, x, t) - evaluate_sine_series(spec, x, t)) < 1e-12);
    }
    QuadratureOptions q;
    q.min_panels = 128;
    const double t = rng.uniform(0.0, 3.0);
    CHECK(integrate([&](double x) { return probability_density(spec, x, t); }, 0.0, cfg.length, q) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("uniform state at the centre: exponential and sine series agree") {
  const auto spec = analytic::uniform_spectrum(201);
  double direct = 0.0;
  for (int n = 1; n <= 201; n += 2) direct += 2.0 * std::sqrt(2.0) / (n * kPi) * std::sqrt(2.0) * std::sin(n * kPi / 2.0);
  CHECK(probability_density(spec, 0.5, 0.0) == doctest::Approx(direct * direct).epsilon(1e-10));
}

TEST_CASE("row evaluation matches pointwise evaluation") {
  testing::Rng rng(8);
  const EnergySpectrum spec({}, rng.amplitudes(90));
  std::vector<double> xs{0.0, 0.13, 0.5, 0.77, 1.0};
  const auto row = evaluate_row(spec, 0.4321, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(row[i] - evaluate_wavefunction(spec, xs[i], 0.4321)) < 1e-12);
}

TEST_CASE("mode phase reduction") {
  const BoxConfig cfg{1.0, 1.0};
  CHECK(std::abs(mode_phase(cfg, 7, 0.3) - std::polar(1.0, -49.0 * kPi * 0.3)) < 1e-12);
  CHECK(std::abs(mode_phase(cfg, 7, 2000.3) - mode_phase(cfg, 7, 0.3)) < 1e-10);
}

TEST_CASE("momentum consistency") {
  const BoxConfig cfg;
  {
    const auto spec = analytic::eigenstate_spectrum(3, 5);
    InitialWavefunction psi0{[](double x) { return complex(std::sqrt(2.0) * std::sin(3 * kPi * x), 0.0); }};
    CHECK(momentum_consistency_check(spec, psi0).max_residual < 1e-8);
  }
  {
    const auto psi0 = analytic::uniform_wavefunction();
    CHECK(momentum_consistency_check(analytic::uniform_spectrum(51), psi0).max_residual < 1e-6);
  }
  {
    const auto psi0 = analytic::gaussian_wavefunction(1.0 / 3.0, 1.0 / 40.0, 15.0 * kPi);
    CHECK(momentum_consistency_check(analytic::gaussian_spectrum(1.0 / 3.0, 1.0 / 40.0, 15.0 * kPi, 64), psi0)
              .max_residual < 1e-6);
  }
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(BoxConfig({-1.0, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS(BoxConfig({1.0, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS(EnergySpectrum({}, {}), ValidationError);
  const EnergySpectrum loose({}, {complex(1.0, 0.0), complex(1.0, 0.0)});
  CHECK_FALSE(loose.normalized());
  CHECK(loose.captured_norm() == doctest::Approx(2.0));
}
