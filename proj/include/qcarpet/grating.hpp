#pragma once

// Periodic fields: paraxial diffraction behind a grating of period 2L and the
// rigid rotator, which shares the same series with L = pi.
//
//   phi(x, z) = (2L)^(-1/2) sum_n phi_n exp(i (n x - n^2 V z) pi / L)
//   I(x, z)   = (2L)^(-1) [I0 + sum_k S^_k((x - k V z) / L)]
//   S^_k(z)   = sum_m phi*_m phi_{k-m} exp(-i (2m - k) pi z) - |phi_{k/2}|^2

#include <span>
#include <vector>

#include "qcarpet/numeric.hpp"
#include "qcarpet/oracle.hpp"

namespace qcarpet {

inline constexpr double kJacobiAngerCutoff = 1e-14;

class PeriodicSpectrum {
 public:
  /// coefficients[i] is phi_n for n = i - n_max; the size must be odd.
  PeriodicSpectrum(std::vector<complex> coefficients, double length = 1.0, double speed = 1.0);

  int n_max() const { return n_max_; }
  double length() const { return length_; }
  double speed() const { return speed_; }
  /// Talbot period of the intensity, 2L/V (the field itself also repeats there).
  double talbot_period() const { return 2.0 * length_ / speed_; }
  std::span<const complex> coefficients() const { return coeffs_; }
  /// phi_n, zero outside the stored range.
  complex coefficient(long n) const;
  /// I0 = sum |phi_n|^2.
  double intensity() const { return intensity_; }

 private:
  std::vector<complex> coeffs_;
  int n_max_ = 0;
  double length_ = 1.0;
  double speed_ = 1.0;
  double intensity_ = 0.0;
};

/// Speed of a grating of period 2L at wavelength lambda: V = lambda / (4L).
inline double grating_speed(double wavelength, double length) { return wavelength / (4.0 * length); }

complex periodic_field(const PeriodicSpectrum& ps, double x, double z);
double intensity(const PeriodicSpectrum& ps, double x, double z);

/// Field along a row of x values at propagation distance z (series kernels).
std::vector<complex> periodic_field_row(const PeriodicSpectrum& ps, double z, std::span<const double> xs);

double grating_structure(const PeriodicSpectrum& ps, int k, double z);

/// (2L)^(-1) [I0 + sum_{|k| <= k_max} S^_k((x - k V z)/L)].
double reconstruct_intensity(const PeriodicSpectrum& ps, int k_max, double x, double z);

/// Mean intensity along x0 + k V z: (2L)^(-1) [I0 + S^_k(x0/L)].
double lane_contrast(const PeriodicSpectrum& ps, int k, double x0);

/// Brute-force z-average of I(x0 + (num/den) V z, z) over den Talbot periods
/// with the plain 2L-periodic wrap.
double lane_contrast_oracle(const PeriodicSpectrum& ps, Slope slope, double x0, std::size_t samples);
std::size_t minimum_lane_samples(const PeriodicSpectrum& ps, Slope slope);

/// pi^-1 int_{-L}^{L} phi*(x - y, 0) phi(x + y, 0) exp(-2 i p y) dy.
double periodic_wigner(const PeriodicSpectrum& ps, double x, double p, const QuadratureOptions& quad = {});

/// S^_k(x/L) = pi W(x, pi k / (2L)) - |phi_{k/2}|^2.
double structure_from_periodic_wigner(const PeriodicSpectrum& ps, int k, double x,
                                      const QuadratureOptions& quad = {});

/// Plane wave through a sinusoidal phase grating, phi(x, 0) = (I0/2L)^(1/2) exp(i alpha cos(pi x / L)):
/// phi_n = I0^(1/2) i^n J_n(alpha), truncated where |J_n(alpha)| < 1e-14.
PeriodicSpectrum sinusoidal_grating(double alpha, double intensity = 1.0, double length = 1.0,
                                    double speed = 1.0);

/// I0/(2L) [1 + (-1)^k J_k(2 alpha sin(pi x0 / L)) - |phi_{k/2}|^2 / I0],
/// |phi_{k/2}|^2 / I0 = J_{k/2}(alpha)^2 for even k and 0 for odd k.
double sinusoidal_contrast(double alpha, int k, double x0, double intensity = 1.0, double length = 1.0);

/// The same expression without the |phi_{k/2}|^2 term.
double sinusoidal_contrast_uncorrected(double alpha, int k, double x0, double intensity = 1.0,
                                       double length = 1.0);

struct RotatorConfig {
  double inertia = 0.5;

  /// Angular range has length 2L = 2 pi.
  double length() const { return kPi; }
  /// V = hbar^2 / (2 I) with hbar = 1.
  double speed() const;
  double revival_period() const { return 2.0 * length() / speed(); }
  void validate() const;
};

/// Angular-momentum amplitudes c_m, m = -m_max..m_max, as a periodic spectrum on theta in [-pi, pi).
PeriodicSpectrum rotator_spectrum(const RotatorConfig& config, std::vector<complex> amplitudes);

}  // namespace qcarpet
