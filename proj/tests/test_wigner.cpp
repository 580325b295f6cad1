#include <cmath>

#include "doctest.h"
#include "qcarpet/analytic.hpp"
#include "qcarpet/travelling_waves.hpp"
#include "qcarpet/wigner.hpp"
#include "support.hpp"

using namespace qcarpet;

namespace {

const double kC = 1.0 / 3.0, kS = 1.0 / 40.0, kP = 15.0 * kPi;

const LocalizationPrediction* find(const LocalizationReport& r, int k, int l) {
  for (const auto& p : r.predictions)
    if (p.k == k && p.l == l) return &p;
  return nullptr;
}

}  // namespace

TEST_CASE("Wigner of a single eigenstate against a direct two-sine quadrature") {
  const auto spec = analytic::eigenstate_spectrum(2);
  const auto phi = AntisymmetricExtension::from_spectrum(spec);
  for (double x : {0.0, 0.3, -0.55}) {
    for (double p : {0.0, kPi, 2.5}) {
      const double M = 1.0 - std::abs(x);
      QuadratureOptions fine;
      fine.min_panels = 256;
      fine.rel_tol = 1e-13;
      const double direct =
          integrate([&](double y) { return std::sin(2 * kPi * (x - y)) * std::sin(2 * kPi * (x + y)) * std::cos(2 * p * y); },
                    -M, M, fine) / kPi;
      const auto w = wigner_of_extension(phi, x, p);
      CHECK(w.w == doctest::Approx(direct).scale(1.0).epsilon(1e-10));
      CHECK(w.imag_residual < 1e-10);
    }
  }
}

TEST_CASE("property: W(-x, -p) = W(x, p)") {
  testing::Rng rng(314);
  const EnergySpectrum spec({}, rng.amplitudes(12));
  const auto phi = AntisymmetricExtension::from_spectrum(spec);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(-1.0, 1.0), p = rng.uniform(-40.0, 40.0);
    CHECK(wigner_of_extension(phi, -x, -p).w == doctest::Approx(wigner_of_extension(phi, x, p).w).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("Wigner window normalization for the moving Gaussian") {
  const auto spec = analytic::gaussian_spectrum(kC, kS, kP, 64);
  const auto phi = AntisymmetricExtension::from_spectrum(spec);
  const double norm = wigner_window_norm(phi, normalization_window(64, 1.0));
  CHECK(norm == doctest::Approx(spec.captured_norm()).epsilon(1e-6));
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Wigner route to the structure functions") {
  SUBCASE("uniform k = 2 at L/4 from the exact extension") {
    // only psi_1 is needed for the half-index correction
    const auto psi1 = analytic::uniform_spectrum(1);
    const auto phi = AntisymmetricExtension::from_initial(analytic::uniform_wavefunction());
    CHECK(structure_from_wigner(phi, psi1, 2, 0.25) == doctest::Approx(2.0 / kPi - 4.0 / (kPi * kPi)).epsilon(1e-8));
  }
  SUBCASE("odd orders carry no half-index correction") {
    testing::Rng rng(4);
    const EnergySpectrum spec({}, rng.amplitudes(9));
    for (int k : {-5, -1, 1, 3, 7}) CHECK(half_index_weight(spec, k) == 0.0);
    CHECK(half_index_weight(spec, 4) == doctest::Approx(std::norm(spec.amplitudes()[1])));
  }
  SUBCASE("stepped k = -3 at L/3") {
    const auto spec = analytic::stepped_spectrum(20);
    const auto phi = AntisymmetricExtension::from_spectrum(spec);
    CHECK(structure_from_wigner(phi, spec, -3, 1.0 / 3.0) == doctest::Approx(-0.475).epsilon(1e-6));
  }
}

TEST_CASE("property: series, extension Wigner and psi Wigner agree") {
  testing::Rng rng(2718);
  for (int trial = 0; trial < 4; ++trial) {
    const BoxConfig cfg{rng.uniform(0.5, 2.0), 1.0};
    const EnergySpectrum spec(cfg, rng.amplitudes(rng.integer(2, 16)));
    const auto phi = AntisymmetricExtension::from_spectrum(spec);
    const auto psi = initial_from_spectrum(spec);
    for (int i = 0; i < 5; ++i) {
      const int k = rng.integer(-9, 9);
      const double x = rng.uniform(0.0, cfg.length);
      const double s = structure_function(spec, k, x / cfg.length);
      CHECK(structure_from_wigner(phi, spec, k, x) == doctest::Approx(s).scale(1.0).epsilon(1e-7));
      CHECK(structure_wigpsi(psi, spec, k, x) == doctest::Approx(s).scale(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("psi-Wigner form for the Gaussian packet") {
  const auto spec = analytic::gaussian_spectrum(kC, kS, kP, 256);
  const auto psi = analytic::gaussian_wavefunction(kC, kS, kP);
  for (int i = 0; i <= 6; ++i) {
    const double z = 0.05 + 0.15 * i;
    CHECK(std::abs(structure_wigpsi(psi, spec, 1, z) - analytic::gaussian_structure_closed(kC, kS, kP, 1, z)) < 1e-4);
  }
  // x -> L - x exchanges the two Wigner terms: S_k(1 - z) = S_-k(z) for even k
  for (double x : {0.2, 0.45})
    CHECK(structure_wigpsi(psi, spec, 2, 1.0 - x) == doctest::Approx(structure_wigpsi(psi, spec, -2, x)).scale(1.0).epsilon(1e-7));
  // resting packet: ridge at the centre, channel at the mirror point
  const auto rest = analytic::gaussian_spectrum(kC, kS, 0.0, 256);
  const auto psi_rest = analytic::gaussian_wavefunction(kC, kS, 0.0);
  CHECK(structure_wigpsi(psi_rest, rest, 1, kC) > 0.4);
  CHECK(structure_wigpsi(psi_rest, rest, 1, 1.0 - kC) < -0.4);
}

TEST_CASE("corner values") {
  const auto uni = analytic::uniform_spectrum(2001);
  CHECK(corner_value(analytic::uniform_wavefunction(), uni, 2, 0) == doctest::Approx(-4.0 / (kPi * kPi)).epsilon(1e-3));
  const auto g = analytic::gaussian_spectrum(kC, kS, kP, 256);
  const auto psi = analytic::gaussian_wavefunction(kC, kS, kP);
  const double c3 = corner_value(psi, g, 3, 0);
  CHECK(c3 == doctest::Approx(std::exp(-9.0 * kPi * kPi / 3200.0)).epsilon(1e-3));
  CHECK(c3 == doctest::Approx(0.9726).epsilon(1e-4));
  CHECK(c3 == doctest::Approx(structure_function(g, 3, 0.0)).epsilon(1e-6));
  CHECK(corner_value(g, 3, 0) == doctest::Approx(structure_function(g, 3, 0.0)).epsilon(1e-8));
  CHECK(corner_value(g, 1, 1) == doctest::Approx(structure_function(g, 1, 1.0)).scale(1.0).epsilon(1e-8));
  for (int k = 1; k <= 10; k += 2) {
    const double law = -std::exp(-kPi * kPi * k * k * kS * kS / 2.0) * std::cos(kPi * k * kC);
    CHECK(corner_value(psi, g, k, 0) == doctest::Approx(law).scale(1.0).epsilon(1e-3));
  }
}

TEST_CASE("symmetry and localization report") {
  const BoxConfig cfg;
  SUBCASE("packet at L/3: k = 3 enhanced") {
    const auto spec = analytic::gaussian_spectrum(kC, kS, 0.0, 128);
    const auto r = symmetry_and_localization_report([&](double x) { return probability_density(spec, x, 0.0); }, cfg, 6);
    CHECK(r.symmetry_point == doctest::Approx(kC).epsilon(1e-4));
    CHECK(r.centroid == doctest::Approx(kC).epsilon(1e-6));
    for (int l : {0, 1}) {
      const auto* p = find(r, 3, l);
      REQUIRE(p != nullptr);
      CHECK(p->modulation == Modulation::enhanced);
      CHECK(p->j == 1);
      REQUIRE(p->kind.has_value());
      CHECK(*p->kind == (((1 + 3 * l) % 2) ? StructureKind::ridge : StructureKind::channel));
    }
  }
  SUBCASE("packet at L/2: odd k suppressed") {
    const auto spec = analytic::gaussian_spectrum(0.5, kS, 0.0, 128);
    const auto r = symmetry_and_localization_report([&](double x) { return probability_density(spec, x, 0.0); }, cfg, 5);
    for (int k : {1, 3, 5}) CHECK(find(r, k, 0)->modulation == Modulation::suppressed);
    CHECK(find(r, 2, 0)->modulation == Modulation::enhanced);
  }
  SUBCASE("uniform density: odd k suppressed") {
    const auto r = symmetry_and_localization_report([](double) { return 1.0; }, cfg, 5, {0, 1}, {});
    CHECK(r.symmetry_point == doctest::Approx(0.5).epsilon(1e-6));
    for (int k : {1, 3, 5}) CHECK(find(r, k, 1)->modulation == Modulation::suppressed);
    CHECK(modulation_name(Modulation::suppressed) == "suppressed");
  }
}
