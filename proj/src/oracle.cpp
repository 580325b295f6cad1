#include "qcarpet/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qcarpet/error.hpp"

namespace qcarpet {

namespace oracle_detail {

namespace {

long frequency(long n, Slope slope) { return n * slope.num - n * n * slope.den; }

bool populated(const complex& c) { return c != complex{}; }

}  // namespace

std::size_t minimum_samples(std::span<const complex> coeffs, long first, Slope slope) {
  long lo = std::numeric_limits<long>::max();
  long hi = std::numeric_limits<long>::min();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!populated(coeffs[i])) continue;
    const long g = frequency(first + static_cast<long>(i), slope);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  if (hi < lo) return 1;
  return static_cast<std::size_t>(2 * (hi - lo) + 1);
}

double line_mean(std::span<const complex> coeffs, long first, double length, Slope slope, double x0,
                 std::size_t samples, double field_scale) {
  if (slope.den < 1) throw ValidationError("slope denominator must be >= 1");
  const std::size_t need = minimum_samples(coeffs, first, slope);
  if (samples < need)
    throw InsufficientSamplesError("oracle needs at least " + std::to_string(need) + " samples, got " +
                                   std::to_string(samples));
  const long S = static_cast<long>(samples);
  std::vector<complex> roots(samples);
  for (long r = 0; r < S; ++r) roots[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * kPi * r / S);

  std::vector<complex> base;
  std::vector<long> freq;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (!populated(coeffs[i])) continue;
    const long n = first + static_cast<long>(i);
    base.push_back(coeffs[i] * std::polar(1.0, static_cast<double>(n) * kPi * x0 / length));
    long g = frequency(n, slope) % S;
    if (g < 0) g += S;
    freq.push_back(g);
  }
  std::vector<double> density(samples);
  std::vector<complex> terms(base.size());
  for (long j = 0; j < S; ++j) {
    for (std::size_t q = 0; q < base.size(); ++q) {
      const long r = (freq[q] * j) % S;
      terms[q] = base[q] * roots[static_cast<std::size_t>(r)];
    }
    density[static_cast<std::size_t>(j)] = std::norm(pairwise_sum(terms)) * field_scale;
  }
  return pairwise_sum(density) / static_cast<double>(S);
}

}  // namespace oracle_detail

namespace {

std::vector<complex> extended_coefficients(const EnergySpectrum& spec) {
  const long N = spec.n_max();
  std::vector<complex> c(static_cast<std::size_t>(2 * N + 1));
  for (long n = -N; n <= N; ++n) c[static_cast<std::size_t>(n + N)] = extended_amplitude(spec, n);
  return c;
}

}  // namespace

std::size_t minimum_oracle_samples(const EnergySpectrum& spec, Slope slope) {
  const auto c = extended_coefficients(spec);
  return oracle_detail::minimum_samples(c, -static_cast<long>(spec.n_max()), slope);
}

double trajectory_average_oracle(const EnergySpectrum& spec, Slope slope, double x0, std::size_t samples) {
  const auto c = extended_coefficients(spec);
  const double L = spec.config().length;
  // |-i (2L)^(-1/2) sum|^2
  return oracle_detail::line_mean(c, -static_cast<long>(spec.n_max()), L, slope, x0, samples, 1.0 / (2.0 * L));
}

double trajectory_average_oracle(const EnergySpectrum& spec, int k, double x0, std::size_t samples) {
  return trajectory_average_oracle(spec, Slope{k, 1}, x0, samples);
}

}  // namespace qcarpet
