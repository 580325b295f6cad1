#pragma once

// Box wavefunctions in the energy basis.
//
// Units: hbar = 1. Lengths are in units of the box length L and times in
// units where the carpet speed V = pi*hbar/(2*M*L) is explicit, so the mass
// never appears: the phase of mode n at time t is n^2 * pi * V * t / L.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcarpet/numeric.hpp"

namespace qcarpet {

inline constexpr double kNormTolerance = 1e-8;
inline constexpr double kCapturedNormWarning = 1e-4;
inline constexpr int kDefaultModes = 256;

struct BoxConfig {
  double length = 1.0;
  double speed = 1.0;

  double revival_period() const { return 2.0 * length / speed; }
  void validate() const;
};

// Analytic provenance of a wavefunction or spectrum. Used for fast paths and
// for choosing the destructive-interference line family.
struct CustomTag {};
struct UniformTag {};
struct GaussianTag {
  double center;
  double width;
  double momentum;
};
struct SteppedTag {
  int period;
  int offset;
  int count;
};
using WavefunctionTag = std::variant<CustomTag, UniformTag, GaussianTag, SteppedTag>;

std::string tag_name(const WavefunctionTag& tag);

/// psi(x, 0) on (0, L). Callers treat it as vanishing outside the box.
struct InitialWavefunction {
  std::function<complex(double)> evaluator;
  WavefunctionTag tag = CustomTag{};
  // interior points where the evaluator has kinks or jumps
  std::vector<double> breakpoints;

  complex operator()(double x) const { return evaluator(x); }
};

class EnergySpectrum {
 public:
  EnergySpectrum(BoxConfig config, std::vector<complex> amplitudes,
                 WavefunctionTag tag = CustomTag{}, std::vector<std::string> warnings = {});

  const BoxConfig& config() const { return config_; }
  int n_max() const { return static_cast<int>(amps_.size()); }
  /// psi_n for n = 1..n_max.
  std::span<const complex> amplitudes() const { return amps_; }
  const WavefunctionTag& tag() const { return tag_; }

  double captured_norm() const { return norm_; }
  bool normalized() const { return std::abs(norm_ - 1.0) <= kNormTolerance; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  BoxConfig config_;
  std::vector<complex> amps_;
  WavefunctionTag tag_;
  double norm_ = 0.0;
  std::vector<std::string> warnings_;
};

/// psi_n for n > 0, -psi_{-n} for n < 0, 0 for n = 0 or |n| > n_max.
complex extended_amplitude(const EnergySpectrum& spec, long n);

/// Energy amplitudes by adaptive quadrature of sqrt(2/L) * int sin(n pi x/L) psi0(x) dx.
EnergySpectrum spectrum_from_initial(const InitialWavefunction& psi0, const BoxConfig& config,
                                     int n_max, const QuadratureOptions& quad = {});

/// psi(x, 0) reconstructed from the (truncated) spectrum.
InitialWavefunction initial_from_spectrum(const EnergySpectrum& spec);

/// Exponential-series form: -i (2L)^(-1/2) sum_{n=-N..N} psi_n exp(i(n x - n^2 V t) pi / L).
complex evaluate_wavefunction(const EnergySpectrum& spec, double x, double t);

/// Sine-series form: (2/L)^(1/2) sum_{n>=1} psi_n exp(-i pi n^2 V t / L) sin(n pi x / L).
complex evaluate_sine_series(const EnergySpectrum& spec, double x, double t);

double probability_density(const EnergySpectrum& spec, double x, double t);

/// psi(x, t) at every x of a row; goes through the series kernels.
std::vector<complex> evaluate_row(const EnergySpectrum& spec, double t, std::span<const double> xs);

/// Mode phase factors exp(-i pi n^2 V t / L) with the time reduced modulo the
/// revival period first.
complex mode_phase(const BoxConfig& config, long n, double t);

struct MomentumResidual {
  double max_residual = 0.0;
  int worst_mode = 0;
};

/// max_n |psi_n - i (pi/L)^(1/2) [psi~(n pi/L) - psi~(-n pi/L)]| with psi~ by quadrature.
MomentumResidual momentum_consistency_check(const EnergySpectrum& spec,
                                            const InitialWavefunction& psi0,
                                            const QuadratureOptions& quad = {});

/// Momentum amplitude psi~(p) = (2 pi)^(-1/2) int_0^L exp(-i p x) psi0(x) dx.
complex momentum_amplitude(const InitialWavefunction& psi0, const BoxConfig& config, double p,
                           const QuadratureOptions& quad = {});

}  // namespace qcarpet
