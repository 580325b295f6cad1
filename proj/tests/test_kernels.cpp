#include <cmath>

#include "doctest.h"
#include "qcarpet/error.hpp"
#include "qcarpet/grating.hpp"
#include "qcarpet/kernels.hpp"
#include "qcarpet/spectrum.hpp"
#include "support.hpp"

using namespace qcarpet;
using kernels::Isa;

namespace {

std::vector<complex> naive(const std::vector<complex>& c, long first, const std::vector<double>& theta) {
  std::vector<complex> out(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j)
    for (std::size_t i = 0; i < c.size(); ++i)
      out[j] += c[i] * std::polar(1.0, static_cast<double>(first + static_cast<long>(i)) * theta[j]);
  return out;
}

double l1(const std::vector<complex>& c) {
  double s = 0.0;
  for (const auto& v : c) s += std::abs(v);
  return s;
}

struct Case {
  std::vector<complex> coeffs;
  long first;
  std::vector<double> theta;
};

Case random_case(testing::Rng& rng) {
  Case c;
  const int n = rng.integer(1, 300);
  c.first = rng.integer(-200, 200);
  c.coeffs.resize(static_cast<std::size_t>(n));
  for (auto& v : c.coeffs) v = rng.complex_unit();
  c.theta.resize(static_cast<std::size_t>(rng.integer(1, 37)));
  for (auto& t : c.theta) t = rng.uniform(-8.0, 8.0);
  return c;
}

}  // namespace

TEST_CASE("scalar kernel agrees with naive summation") {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const Case c = random_case(rng);
    std::vector<complex> out(c.theta.size());
    kernels::scalar::exp_series(c.coeffs, c.first, c.theta, out);
    const auto ref = naive(c.coeffs, c.first, c.theta);
    for (std::size_t j = 0; j < out.size(); ++j) CHECK(std::abs(out[j] - ref[j]) <= 1e-12 * l1(c.coeffs));
  }
}

TEST_CASE("AVX2 kernel is equivalent to the scalar kernel") {
  if (!kernels::isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  testing::Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const Case c = random_case(rng);
    std::vector<complex> a(c.theta.size()), b(c.theta.size());
    kernels::scalar::exp_series(c.coeffs, c.first, c.theta, a);
    kernels::avx2::exp_series(c.coeffs, c.first, c.theta, b);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-13 * l1(c.coeffs));
  }
}

TEST_CASE("dispatch can be pinned and restored") {
  const Isa automatic = kernels::active_isa();
  kernels::force_isa(Isa::scalar);
  CHECK(kernels::active_isa() == Isa::scalar);
  kernels::force_isa(std::nullopt);
  CHECK(kernels::active_isa() == automatic);
  if (!kernels::isa_available(Isa::avx2)) CHECK_THROWS_AS(kernels::force_isa(Isa::avx2), ValidationError);
  CHECK(kernels::isa_name(Isa::scalar) == "scalar");
}

TEST_CASE("carpet rows and grating rows are ISA independent") {
  if (!kernels::isa_available(Isa::avx2)) return;
  testing::Rng rng(5);
  const EnergySpectrum spec({}, rng.amplitudes(120));
  std::vector<double> xs(101);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) / 100.0;
  kernels::force_isa(Isa::scalar);
  const auto a = evaluate_row(spec, 0.3173, xs);
  const auto ps = sinusoidal_grating(1.7);
  const auto ga = periodic_field_row(ps, 0.91, xs);
  kernels::force_isa(Isa::avx2);
  const auto b = evaluate_row(spec, 0.3173, xs);
  const auto gb = periodic_field_row(ps, 0.91, xs);
  kernels::force_isa(std::nullopt);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) < 1e-12);
    CHECK(std::abs(ga[i] - gb[i]) < 1e-12);
  }
}

TEST_CASE("empty inputs") {
  std::vector<complex> none, out(3);
  std::vector<double> theta{0.1, 0.2, 0.3};
  kernels::exp_series(none, 0, theta, out);
  for (const auto& v : out) CHECK(v == complex(0.0, 0.0));
}
