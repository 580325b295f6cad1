#pragma once

// Closed-form reference states used as analytic oracles elsewhere.

#include <vector>

#include "qcarpet/spectrum.hpp"

namespace qcarpet::analytic {

/// +1, 0, -1 as frac(x/L) is <, =, > 1/2.
int sign_function(double x, double length = 1.0);

/// psi(x,0) = L^(-1/2): psi_n = 2 sqrt(2)/(n pi) for odd n, 0 for even n.
EnergySpectrum uniform_spectrum(int n_max, const BoxConfig& config = {});
InitialWavefunction uniform_wavefunction(const BoxConfig& config = {});

/// Closed form of S_k for the uniform state, z reduced into [0, 1).
/// Odd k gives 0 identically. At k = 0 the sin(x)/x limit yields 4 min{z,1-z} - 1.
double uniform_structure_closed(int k, double z);

/// Travelling-wave form of the uniform carpet with waves |k| <= k_max:
/// 2 sum (pi k L)^(-1) sigma(x - 2kVt) sin[2 pi k (x - 2kVt)/L] + [1 - 2 sigma(x)]/L,
/// the k = 0 term taken as its limit 4 sigma(x) z / L with z = frac(x/L).
double uniform_carpet_closed(double x, double t, int k_max, const BoxConfig& config = {});

/// Upper bound 4/(pi^2 k_max) on the tail dropped by uniform_carpet_closed.
double uniform_carpet_tail_bound(int k_max);

/// psi(x,0) = (2 pi s^2)^(-1/4) exp(-(x - c)^2 / (4 s^2)) exp(i p x) on (0, L), K = 1.
InitialWavefunction gaussian_wavefunction(double center, double width, double momentum,
                                          const BoxConfig& config = {});

/// True when 4 sigma < min(center, L - center), the K ~ 1 regime.
bool gaussian_well_localized(double center, double width, const BoxConfig& config = {});

/// Amplitudes by quadrature; adds a warning outside the K ~ 1 regime.
EnergySpectrum gaussian_spectrum(double center, double width, double momentum, int n_max,
                                 const BoxConfig& config = {});

/// Whole-line momentum transform of the Gaussian (closed form).
complex gaussian_momentum_amplitude(double center, double width, double momentum, double p);

/// Three-term Gaussian structure function (two Wigner Gaussians plus the
/// branch-defined interference cosine), without the -|psi_{k/2}|^2/2 term.
double gaussian_structure_closed(double center, double width, double momentum, int k, double x,
                                 const BoxConfig& config = {});

/// Equal-weight superposition psi_{period*j + offset} = count^(-1/2), j = 0..count-1
/// (j starts at 1 when offset = 0).
EnergySpectrum stepped_spectrum(int count, int period = 3, int offset = 1, int n_max = 0,
                                const BoxConfig& config = {});

/// psi_n = N^(-1/2) for first < n <= first + count.
EnergySpectrum block_spectrum(int first, int count, const BoxConfig& config = {});

EnergySpectrum eigenstate_spectrum(int n, int n_max = 0, const BoxConfig& config = {});

}  // namespace qcarpet::analytic
