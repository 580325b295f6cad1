#pragma once

// Destructive / constructive interference predictor for straight carpet lines.

#include <optional>
#include <vector>

#include "qcarpet/spectrum.hpp"
#include "qcarpet/travelling_waves.hpp"

namespace qcarpet {

struct LineEntry {
  int k = 0;  // slope index: the line is x = k * period * V t + l L / period
  int l = 0;
  StructureKind kind = StructureKind::channel;
  double slope = 0.0;      // in units of V (k * period)
  double intercept = 0.0;  // in units of L (l / period)
};

struct PlainProvenance {};
struct PeriodicProvenance {
  int period;
  int offset;
};

struct LineFamily {
  std::vector<LineEntry> entries;
  std::variant<PlainProvenance, PeriodicProvenance> provenance = PlainProvenance{};

  /// Entry matching slope and intercept (intercept compared modulo nothing).
  std::optional<LineEntry> find(double slope, double intercept, double tol = 1e-12) const;
};

struct IndexRange {
  int lo = 0;
  int hi = 0;
};

/// All (k, l) with |k| <= k_max and l in range; channel when kl is even, ridge when odd.
LineFamily predict_lines(int k_max, IndexRange l_range);

/// Periodically spaced amplitudes (psi_n = 0 unless n = r mod p): lines
/// x = k p V t + l L / p, channel when (k + 2r/p) l is an even integer, ridge
/// when odd, excluded when not an integer. p = 1 reproduces predict_lines.
LineFamily predict_lines_periodic(int period, int offset, int k_max, IndexRange l_range);

/// Smallest period p and offset r with psi_n = 0 for n != r mod p (p = 1 when
/// fewer than two modes are populated).
PeriodicProvenance detect_amplitude_period(const EnergySpectrum& spec, double cutoff = 1e-14);

/// Quasi-random-phase estimate of the mean density along a channel,
/// L^-1 (1 - sum_n Re{psi*_n psi_{n+|k|}}).
double depth_estimate(const EnergySpectrum& spec, int k);

/// Same with the subtraction replaced by addition (ridge height).
double ridge_height_estimate(const EnergySpectrum& spec, int k);

inline constexpr double kVisibilityFactor = 0.25;
inline constexpr int kVisibilityCap = 64;

/// Largest |k| with |k| pi hbar / L <= c * dp (c = 1/4), capped at 64.
/// Infinite dp (heavy momentum tails) returns the cap.
int localization_bound(double momentum_spread, const BoxConfig& config = {});

/// RMS momentum spread of psi0 (hbar = 1). Gaussian tags use sigma_p = 1/(2 sigma);
/// a wavefunction that does not vanish at the walls has divergent spread (+inf);
/// otherwise <p^2> - <p>^2 by quadrature of psi0'.
double momentum_spread(const InitialWavefunction& psi0, const BoxConfig& config = {});

/// Momentum spread of a spectrum: <p^2> = sum |psi_n|^2 (n pi / L)^2 (box eigenbasis).
double momentum_spread(const EnergySpectrum& spec);

}  // namespace qcarpet
