#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "qcarpet/error.hpp"
#include "qcarpet/numeric.hpp"
#include "qcarpet/semiclassical.hpp"
#include "support.hpp"

using namespace qcarpet;

namespace {

// Closed orbit action of U = x^4 (M = 1): A(E) = sqrt(2) B(1/4, 3/2) E^(3/4).
double quartic_level(int n) {
  const double c = std::sqrt(2.0) * std::beta(0.25, 1.5);
  return std::pow(2.0 * kPi * (n + 0.5) / c, 4.0 / 3.0);
}

double hermite_eigenfunction(int n, double x) {
  double norm = std::pow(kPi, -0.25) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
  return norm * std::exp(-0.5 * x * x) * std::hermite(static_cast<unsigned>(n), x);
}

}  // namespace

TEST_CASE("harmonic Bohr-Sommerfeld levels are exact") {
  for (auto [mass, omega] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.7}}) {
    const auto pm = PotentialModel::harmonic(mass, omega);
    const auto levels = bohr_sommerfeld_levels(pm, 0, 40);
    for (int n = 0; n <= 40; ++n) CHECK(levels.at(n) == doctest::Approx((n + 0.5) * omega).epsilon(1e-12));
    CHECK(pm.action(3.0) == doctest::Approx(2.0 * kPi * 3.0 / omega).epsilon(1e-12));
    CHECK(pm.period(3.0) == doctest::Approx(2.0 * kPi / omega).epsilon(1e-12));
    CHECK(pm.symmetric());
  }
  CHECK_THROWS_AS(bohr_sommerfeld_levels(PotentialModel::harmonic(), 0, 3).at(4), ValidationError);
}

TEST_CASE("quartic ground level against two independent action evaluations") {
  const auto pm = PotentialModel::quartic();
  const auto levels = bohr_sommerfeld_levels(pm, 0, 30);
  // tanh-sinh handles the square-root endpoints of the action integrand
  boost::math::quadrature::tanh_sinh<double> ts;
  auto action = [&](double e) {
    const double a = std::pow(e, 0.25);
    return 2.0 * ts.integrate([&](double x) { return std::sqrt(std::max(0.0, 2.0 * (e - std::pow(x, 4)))); }, -a, a);
  };
  double lo = 0.1, hi = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (action(mid) < kPi ? lo : hi) = mid;
  }
  CHECK(levels.at(0) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
  CHECK(levels.at(0) == doctest::Approx(0.5462673251).epsilon(1e-9));
  for (int n : {0, 1, 7, 30}) CHECK(levels.at(n) == doctest::Approx(quartic_level(n)).epsilon(1e-11));
  CHECK(pm.partial_action(levels.at(4), pm.turning_points(levels.at(4)).right) ==
        doctest::Approx(0.5 * pm.action(levels.at(4))).epsilon(1e-8));
}

TEST_CASE("steep power-law wells trend toward the box spectrum") {
  double previous = 0.0;
  for (double e : {2.0, 4.0, 10.0, 40.0}) {
    const auto pm = PotentialModel::power_law(0.5, e);
    const auto levels = bohr_sommerfeld_levels(pm, 0, 6);
    for (int n = 1; n <= 6; ++n) CHECK(levels.at(n) > levels.at(n - 1));
    const double ratio = levels.at(6) / levels.at(0);
    CHECK(ratio > previous);
    previous = ratio;
  }
  CHECK(previous < 169.0);  // (6.5/0.5)^2 is the hard-wall limit of the rule
}

TEST_CASE("WKB eigenfunction of the oscillator") {
  const auto pm = PotentialModel::harmonic();
  const auto levels = bohr_sommerfeld_levels(pm, 0, 12);
  for (double x : {0.0, 0.35, -0.7}) {
    const double exact = hermite_eigenfunction(10, x);
    CHECK(std::abs(wkb_eigenfunction(pm, levels, 10, x) - exact) < 0.05 * std::abs(exact) + 1e-3);
  }
  // node count between the turning points
  const auto tp = pm.turning_points(levels.at(10));
  const double buffer = 0.02 * tp.width();
  int nodes = 0;
  double prev = wkb_eigenfunction(pm, levels, 10, tp.left + buffer);
  for (int i = 1; i <= 4000; ++i) {
    const double x = tp.left + buffer + (tp.width() - 2 * buffer) * i / 4000.0;
    const double v = wkb_eigenfunction(pm, levels, 10, x);
    if ((v > 0) != (prev > 0)) ++nodes;
    prev = v;
  }
  CHECK(nodes == 10);
  CHECK_THROWS_AS(wkb_eigenfunction(pm, levels, 10, tp.right - 1e-4 * tp.width()), TurningPointError);
  // envelope: at a crest the magnitude is 2 sqrt(M / (T p))
  const double e = levels.at(10);
  double best = 0.0, at = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = -0.3 + 0.6 * i / 400.0;
    const double v = std::abs(wkb_eigenfunction(pm, levels, 10, x));
    if (v > best) best = v, at = x;
  }
  CHECK(best == doctest::Approx(2.0 * std::sqrt(1.0 / (pm.period(e) * pm.momentum(e, at)))).epsilon(1e-3));
}

TEST_CASE("oscillator channels") {
  const auto pm = PotentialModel::harmonic();
  const auto levels = bohr_sommerfeld_levels(pm, 0, 20);
  for (double x : {0.0, 1.3, -2.2}) {
    const double expected = 2.0 / (pm.momentum(levels.at(12), x) + pm.momentum(levels.at(10), x));
    CHECK(std::abs(channel_velocity(pm, levels, 10, 2, x)) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(std::abs(channel_velocity(pm, levels, 10, 2, 3.5)) > std::abs(channel_velocity(pm, levels, 10, 2, 0.0)));
  const auto fwd = channel_trajectory(pm, levels, 10, 2, 0.4, 1.0, 1.5);
  const auto bwd = channel_trajectory(pm, levels, 10, -2, 0.4, 1.0, -1.5);
  CHECK(fwd.x.back() == doctest::Approx(bwd.x.back()).epsilon(1e-7));
  CHECK(fwd.t.back() - 1.0 == doctest::Approx(1.0 - bwd.t.back()));
  const auto long_run = channel_trajectory(pm, levels, 10, 2, 0.0, 0.0, 100.0);
  REQUIRE(long_run.exit_time.has_value());
  const auto tp = pm.turning_points(levels.at(10));
  CHECK(std::abs(long_run.x.back()) > 0.9 * tp.right);
}

TEST_CASE("box limit: channels in a steep well move at k V") {
  const auto pm = PotentialModel::power_law(0.5, 60.0);
  const auto levels = bohr_sommerfeld_levels(pm, 0, 40);
  const int n = 30, k = 2;
  const double l_eff = pm.turning_points(levels.at(n)).width();
  const double v = kPi / (2.0 * l_eff);
  CHECK(std::abs(channel_velocity(pm, levels, n, k, 0.0)) == doctest::Approx(k * v).epsilon(0.05));
}

TEST_CASE("phase anchors") {
  const auto pm = PotentialModel::harmonic();
  const auto levels = bohr_sommerfeld_levels(pm, 0, 20);
  const auto anchors = enumerate_anchors(pm, levels, 10, 2, 0.0, 0.0, 10.0);
  REQUIRE(anchors.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(anchors[i] == doctest::Approx(i * kPi).scale(1.0).epsilon(1e-9));
  for (double t : anchors) CHECK(std::abs(phase_anchor_residual(pm, levels, 10, 2, 0.0, t)) < 1e-9);
  testing::Rng rng(7);
  for (const auto& model : {PotentialModel::harmonic(), PotentialModel::quartic()}) {
    const auto lv = bohr_sommerfeld_levels(model, 0, 20);
    for (int i = 0; i < 20; ++i) {
      const int n = rng.integer(2, 15), k = rng.integer(1, 4);
      const double t0 = rng.uniform(-5.0, 5.0);
      CHECK(phase_anchor_residual_symmetric(lv, n, k, t0) ==
            doctest::Approx(phase_anchor_residual(model, lv, n, k, 0.0, t0)).scale(1.0).epsilon(1e-8));
      const double period = 2.0 * kPi / (lv.at(n + k) - lv.at(n));
      const double a = phase_anchor_residual(model, lv, n, k, 0.3, t0);
      const double b = phase_anchor_residual(model, lv, n, k, 0.3, t0 + period);
      CHECK(std::abs(std::remainder(a - b, 2.0 * kPi)) < 1e-8);
    }
  }
}

TEST_CASE("slope ratios") {
  {
    const auto pm = PotentialModel::harmonic();
    const auto r = slope_ratio_check(pm, bohr_sommerfeld_levels(pm, 0, 40), 10, 1, 3, 0.0);
    CHECK(r.ratio == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(r.expected == doctest::Approx(1.0 / 3.0));
    CHECK_FALSE(r.refused);
    const auto s = slope_ratio_check(pm, bohr_sommerfeld_levels(pm, 0, 40), 10, 2, -1, 0.0);
    CHECK(s.ratio == doctest::Approx(-2.0).epsilon(1e-13));
  }
  {
    const auto pm = PotentialModel::quartic();
    const auto levels = bohr_sommerfeld_levels(pm, 0, 60);
    for (int n : {10, 20, 30}) {
      const auto r = slope_ratio_check(pm, levels, n, 1, 2, 0.0);
      CHECK_FALSE(r.refused);
      CHECK(std::abs(r.ratio - 0.5) < 0.05 * 0.5);
      CHECK(r.spacing_variation < kSpacingUniformity);
    }
    const auto wide = slope_ratio_check(pm, levels, 2, 1, 12, 0.0);
    CHECK(wide.refused);
    CHECK(wide.warning.has_value());
  }
}

TEST_CASE("tabulated potential") {
  std::vector<double> xs, us;
  for (int i = -60; i <= 60; ++i) {
    xs.push_back(i * 0.1);
    us.push_back(0.5 * xs.back() * xs.back());
  }
  const auto pm = PotentialModel::table(xs, us);
  CHECK(pm.symmetric());
  const auto levels = bohr_sommerfeld_levels(pm, 0, 5);
  CHECK(levels.at(5) == doctest::Approx(5.5).epsilon(1e-6));
  CHECK_THROWS_AS(PotentialModel::table({0.0, 1.0, 2.0, 3.0}, {1.0, 0.0, 1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(pm.turning_points(100.0), BracketError);
}
