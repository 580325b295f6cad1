#pragma once

// Brute-force time averages along straight lines in the (x, t) plane.
//
// These never touch the structure functions. The wavefunction along the line
// x0 + (num/den) V t is sampled at S equally spaced times over den revival
// periods; every mode phase is then an integer multiple of 2 pi / S, read from
// a table, so the sample mean is exact once S exceeds the largest frequency.

#include <span>

#include "qcarpet/spectrum.hpp"

namespace qcarpet {

/// Rational slope num/den in units of V.
struct Slope {
  long num = 0;
  long den = 1;
};

/// Smallest sample count satisfying the oracle precondition
/// samples > 2 * max over populated (m, n) of |(m - n)(m + n - slope)| (scaled by den).
std::size_t minimum_oracle_samples(const EnergySpectrum& spec, Slope slope);

/// Mean of P(x0 + slope V t, t) over den revival periods. Positions outside
/// (0, L) use the odd 2L-periodic extension of psi, i.e. P(-x) = P(x) and
/// P(x + 2L) = P(x). Throws InsufficientSamplesError below the precondition.
double trajectory_average_oracle(const EnergySpectrum& spec, Slope slope, double x0,
                                 std::size_t samples);
double trajectory_average_oracle(const EnergySpectrum& spec, int k, double x0, std::size_t samples);

namespace oracle_detail {

/// Shared sampler: amplitudes c_n for n = first..first+size-1, field
/// sum_n c_n exp(i n pi x0 / L) exp(i (n num - n^2 den) 2 pi j / S) / norm.
/// Returns the mean of |field|^2 over j and the bound used for the check.
double line_mean(std::span<const complex> coeffs, long first, double length, Slope slope, double x0,
                 std::size_t samples, double field_scale);

std::size_t minimum_samples(std::span<const complex> coeffs, long first, Slope slope);

}  // namespace oracle_detail

}  // namespace qcarpet
