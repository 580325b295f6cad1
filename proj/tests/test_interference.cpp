#include <cmath>

#include "doctest.h"
#include "qcarpet/analytic.hpp"
#include "qcarpet/interference.hpp"
#include "support.hpp"

using namespace qcarpet;

namespace {

std::optional<StructureKind> kind_of(const LineFamily& f, double slope, double intercept) {
  if (auto e = f.find(slope, intercept)) return e->kind;
  return std::nullopt;
}

}  // namespace

TEST_CASE("plain prediction parity rule") {
  const auto f = predict_lines(4, {0, 2});
  CHECK(kind_of(f, 2, 1) == StructureKind::channel);
  CHECK(kind_of(f, 1, 1) == StructureKind::ridge);
  CHECK(kind_of(f, 3, 0) == StructureKind::channel);
  CHECK(kind_of(f, -3, 2) == StructureKind::channel);
  CHECK_FALSE(kind_of(f, 5, 0).has_value());
  CHECK(f.entries.size() == 9 * 3);
  CHECK(std::holds_alternative<PlainProvenance>(f.provenance));
}

TEST_CASE("periodic prediction") {
  const auto f = predict_lines_periodic(2, 1, 3, {0, 3});
  for (const auto& e : f.entries) {
    CHECK(e.slope == doctest::Approx(2.0 * e.k));
    CHECK(e.intercept == doctest::Approx(e.l / 2.0));
    CHECK((e.kind == StructureKind::channel) == (((e.k + 1) * e.l) % 2 == 0));
  }
  // the known false negative: nothing through L/3 for p = 3, r = 1
  const auto g = predict_lines_periodic(3, 1, 5, {0, 2});
  for (const auto& e : g.entries) CHECK(e.intercept != doctest::Approx(1.0 / 3.0));
  // p = 1 reduces to the plain rule
  const auto plain = predict_lines(5, {-2, 2});
  const auto p1 = predict_lines_periodic(1, 0, 5, {-2, 2});
  REQUIRE(plain.entries.size() == p1.entries.size());
  for (std::size_t i = 0; i < plain.entries.size(); ++i) {
    CHECK(plain.entries[i].k == p1.entries[i].k);
    CHECK(plain.entries[i].l == p1.entries[i].l);
    CHECK(plain.entries[i].kind == p1.entries[i].kind);
  }
}

TEST_CASE("amplitude period detection") {
  const auto st = detect_amplitude_period(analytic::stepped_spectrum(20));
  CHECK(st.period == 3);
  CHECK(st.offset == 1);
  const auto u = detect_amplitude_period(analytic::uniform_spectrum(51));
  CHECK(u.period == 2);
  CHECK(u.offset == 1);
  CHECK(detect_amplitude_period(analytic::eigenstate_spectrum(4)).period == 1);
  CHECK(detect_amplitude_period(analytic::block_spectrum(0, 10)).period == 1);
}

TEST_CASE("depth and ridge height estimates") {
  const int N = 200;
  const auto block = analytic::block_spectrum(300, N);
  for (int k : {1, 3, 7}) {
    CHECK(depth_estimate(block, k) == doctest::Approx(static_cast<double>(k) / N).epsilon(1e-12));
    CHECK(ridge_height_estimate(block, k) == doctest::Approx((2.0 * N - k) / N).epsilon(1e-12));
  }
  CHECK(depth_estimate(analytic::eigenstate_spectrum(6), 1) == doctest::Approx(1.0));
  const EnergySpectrum wide({2.0, 1.0}, {complex(1.0, 0.0)});
  CHECK(depth_estimate(wide, 1) == doctest::Approx(0.5));
}

TEST_CASE("localization bound") {
  const double dp = 1.0 / (2.0 / 40.0);
  CHECK(localization_bound(dp) == static_cast<int>(std::floor(kVisibilityFactor * dp / kPi)));
  CHECK(localization_bound(0.0) == 0);
  CHECK(localization_bound(std::numeric_limits<double>::infinity()) == kVisibilityCap);
  CHECK(localization_bound(1e9) == kVisibilityCap);
  const auto g = analytic::gaussian_wavefunction(1.0 / 3.0, 1.0 / 40.0, 15.0 * kPi);
  CHECK(momentum_spread(g) == doctest::Approx(20.0));
  CHECK(std::isinf(momentum_spread(analytic::uniform_wavefunction())));
  InitialWavefunction ground{[](double x) { return complex(std::sqrt(2.0) * std::sin(kPi * x), 0.0); }};
  CHECK(momentum_spread(ground) == doctest::Approx(kPi).epsilon(1e-8));
  CHECK(momentum_spread(analytic::eigenstate_spectrum(3)) == doctest::Approx(3.0 * kPi));
}
