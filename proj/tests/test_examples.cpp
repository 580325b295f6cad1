#include <cmath>

#include "doctest.h"
#include "qcarpet/analytic.hpp"
#include "qcarpet/error.hpp"
#include "qcarpet/travelling_waves.hpp"
#include "support.hpp"

using namespace qcarpet;

namespace {

// Half the sum of |psi_m psi_{k-m}| over the pairs dropped by truncation at N.
double uniform_tail(int N, int k) {
  auto a = [](long n) { return (n % 2 != 0) ? 2.0 * std::sqrt(2.0) / (kPi * std::abs(static_cast<double>(n))) : 0.0; };
  double total = 0.0;
  const long reach = 400000;
  for (long m = -reach; m <= reach; ++m)
    if (std::abs(m) > N || std::abs(k - m) > N) total += a(m) * a(k - m);
  return 0.5 * total + 16.0 / (kPi * kPi * (reach - std::abs(k)));
}

}  // namespace

TEST_CASE("uniform spectrum coefficients and captured norm") {
  const auto spec = analytic::uniform_spectrum(999);
  CHECK(spec.amplitudes()[0].real() == doctest::Approx(2.0 * std::sqrt(2.0) / kPi));
  CHECK(spec.amplitudes()[0].real() == doctest::Approx(0.9003).epsilon(1e-4));
  CHECK(spec.amplitudes()[1] == complex(0.0, 0.0));
  double partial = 0.0;
  for (int n = 1; n <= 999; n += 2) partial += 8.0 / (kPi * kPi * n * n);
  CHECK(spec.captured_norm() == doctest::Approx(partial).epsilon(1e-14));
  // the omitted tail is (8/pi^2) sum_{odd n > 999} n^-2, just below 4/(pi^2 1000)
  CHECK(1.0 - spec.captured_norm() < 4.0 / (kPi * kPi * 1000.0));
  CHECK(1.0 - spec.captured_norm() > 4.0 / (kPi * kPi * 1001.0));
  CHECK(std::holds_alternative<UniformTag>(spec.tag()));
}

TEST_CASE("uniform closed form against the truncated series within the exact tail") {
  const int N = 501;
  const auto spec = analytic::uniform_spectrum(N);
  testing::Rng rng(21);
  for (int k : {0, 2, 4, 6, -2, 3}) {
    const double bound = uniform_tail(N, k) + 1e-13;
    for (int i = 0; i < 10; ++i) {
      const double z = rng.uniform();
      CHECK(std::abs(structure_function(spec, k, z) - analytic::uniform_structure_closed(k, z)) <= bound);
    }
  }
  CHECK(analytic::uniform_structure_closed(2, 0.25) == doctest::Approx(2.0 / kPi - 4.0 / (kPi * kPi)));
  CHECK(analytic::uniform_structure_closed(2, 0.25) == doctest::Approx(0.23134).epsilon(1e-5));
  CHECK(analytic::uniform_structure_closed(5, 0.3) == 0.0);
  CHECK(analytic::uniform_structure_closed(0, 0.2) == doctest::Approx(4 * 0.2 - 1.0));
  CHECK(analytic::uniform_structure_closed(2, 1.25) == doctest::Approx(analytic::uniform_structure_closed(2, 0.25)));
}

TEST_CASE("uniform carpet closed form") {
  const auto spec = analytic::uniform_spectrum(1001);
  testing::Rng rng(12);
  for (int k_max : {4, 10, 25}) {
    const double bound = analytic::uniform_carpet_tail_bound(k_max);
    CHECK(bound == doctest::Approx(4.0 / (kPi * kPi * k_max)));
    for (int i = 0; i < 10; ++i) {
      const double x = rng.uniform(), t = rng.uniform(0.0, 2.0);
      CHECK(std::abs(analytic::uniform_carpet_closed(x, t, k_max) - reconstruct_density(spec, 2 * k_max, x, t)) <= bound);
    }
  }
  // at t = 0 the partial sums approach the flat initial density
  CHECK(analytic::uniform_carpet_closed(0.25, 0.0, 400) == doctest::Approx(1.0).epsilon(4.0 / (kPi * kPi * 400)));
  CHECK(std::isfinite(analytic::uniform_carpet_closed(0.5, 0.0, 10)));
  CHECK(analytic::sign_function(0.2) == 1);
  CHECK(analytic::sign_function(0.5) == 0);
  CHECK(analytic::sign_function(0.7) == -1);
  CHECK(analytic::sign_function(1.2) == 1);
}

TEST_CASE("Gaussian spectrum: captured norm, reality and validity warning") {
  const auto g = analytic::gaussian_spectrum(1.0 / 3.0, 1.0 / 40.0, 15.0 * kPi, 128);
  CHECK(g.captured_norm() > 1.0 - 1e-6);
  CHECK(g.warnings().empty());
  const auto still = analytic::gaussian_spectrum(0.5, 1.0 / 40.0, 0.0, 64);
  for (int n = 1; n <= 64; ++n) CHECK(std::abs(still.amplitudes()[n - 1].imag()) < 1e-12);
  const auto wide = analytic::gaussian_spectrum(0.5, 0.25, 0.0, 32);
  CHECK_FALSE(wide.warnings().empty());
  CHECK_FALSE(analytic::gaussian_well_localized(0.5, 0.25));
  CHECK(analytic::gaussian_well_localized(1.0 / 3.0, 1.0 / 40.0));
}

TEST_CASE("Gaussian closed-form structure function") {
  const double c = 1.0 / 3.0, s = 1.0 / 40.0, p = 15.0 * kPi;
  const auto spec = analytic::gaussian_spectrum(c, s, p, 256);
  for (int i = 0; i <= 30; ++i) {
    const double z = 0.05 + 0.9 * i / 30.0;
    CHECK(std::abs(structure_function(spec, 1, z) - analytic::gaussian_structure_closed(c, s, p, 1, z)) < 1e-4);
  }
  // deep channel at z = 0, flanked by ridges
  const double at0 = analytic::gaussian_structure_closed(c, s, p, 1, 0.0);
  CHECK(at0 < -0.4);
  // mirror S_-1(1 + z) = S_1(1 - z)
  for (double z : {0.1, 0.25, 0.4})
    CHECK(analytic::gaussian_structure_closed(c, s, p, -1, 1.0 + z) ==
          doctest::Approx(analytic::gaussian_structure_closed(c, s, p, 1, 1.0 - z)).scale(1.0).epsilon(1e-10));
  // zero momentum: ridge at 1/3, channel at 2/3
  CHECK(analytic::gaussian_structure_closed(c, s, 0.0, 1, 1.0 / 3.0) > 0.4);
  CHECK(analytic::gaussian_structure_closed(c, s, 0.0, 1, 2.0 / 3.0) < -0.4);
}

TEST_CASE("stepped and block spectra") {
  const auto st = analytic::stepped_spectrum(20);
  CHECK(st.captured_norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(st.n_max() == 58);
  CHECK(std::abs(st.amplitudes()[0] - 1.0 / std::sqrt(20.0)) < 1e-15);
  CHECK(st.amplitudes()[1] == complex(0.0, 0.0));
  const auto zero_offset = analytic::stepped_spectrum(4, 3, 0);
  CHECK(std::abs(zero_offset.amplitudes()[2]) > 0.0);
  const auto block = analytic::block_spectrum(10, 5);
  CHECK(block.n_max() == 15);
  CHECK(block.amplitudes()[9] == complex(0.0, 0.0));
  CHECK(block.amplitudes()[10].real() == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK_THROWS_AS(analytic::stepped_spectrum(0), ValidationError);
  CHECK_THROWS_AS(analytic::eigenstate_spectrum(0), ValidationError);
}
