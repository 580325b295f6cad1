#pragma once

// Semiclassical description of carpets in smooth one-dimensional wells with
// two turning points (hbar = 1): Bohr-Sommerfeld levels, WKB eigenfunctions
// and the curved channels
//
//   dx_k/dt = +-(E_{n+|k|} - E_n) / (p_{n+|k|}(x) + p_n(x)).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcarpet/ode.hpp"

namespace qcarpet {

struct TurningPoints {
  double left = 0.0;
  double right = 0.0;
  double width() const { return right - left; }
};

inline constexpr double kTurningBuffer = 1e-3;

class PotentialModel {
 public:
  /// U = M omega^2 x^2 / 2.
  static PotentialModel harmonic(double mass = 1.0, double omega = 1.0);
  /// U = c x^4.
  static PotentialModel quartic(double coefficient = 1.0, double mass = 1.0);
  /// U = |x / a|^e with e > 0.
  static PotentialModel power_law(double scale, double exponent, double mass = 1.0);
  /// Monotone cubic (PCHIP) through the samples; the table must have a single
  /// interior minimum with U decreasing before it and increasing after it.
  static PotentialModel table(std::vector<double> xs, std::vector<double> us, double mass = 1.0);

  double operator()(double x) const { return potential_(x); }
  double mass() const { return mass_; }
  const std::string& name() const { return name_; }
  double minimum_position() const { return x_min_; }
  double minimum_value() const { return u_min_; }
  /// Mirror symmetry about the minimum.
  bool symmetric() const { return symmetric_; }

  /// Classical turning points at energy E (> minimum). Throws BracketError when
  /// the well does not confine the energy.
  TurningPoints turning_points(double energy) const;
  /// p(x) = sqrt(2 M (E - U(x))), zero in forbidden regions.
  double momentum(double energy, double x) const;
  /// A(E) = closed-orbit integral of p dx (Gauss-Chebyshev, second kind).
  double action(double energy) const;
  /// T(E) = closed-orbit integral of M / p dx (Gauss-Chebyshev, first kind).
  double period(double energy) const;
  /// int_{x_L}^{x} p dx' via x' = x_L + w^2.
  double partial_action(double energy, double x) const;

 private:
  std::function<double(double)> potential_;
  std::function<TurningPoints(double)> exact_turning_;
  double mass_ = 1.0;
  double x_min_ = 0.0;
  double u_min_ = 0.0;
  double domain_lo_ = -1e300;
  double domain_hi_ = 1e300;
  bool symmetric_ = false;
  std::string name_;
};

class LevelTable {
 public:
  LevelTable(int n_lo, std::vector<double> energies);
  int n_lo() const { return n_lo_; }
  int n_hi() const { return n_lo_ + static_cast<int>(energies_.size()) - 1; }
  /// E_n; throws ValidationError outside the table.
  double at(int n) const;
  const std::vector<double>& energies() const { return energies_; }

 private:
  int n_lo_;
  std::vector<double> energies_;
};

/// Solves A(E) = 2 pi (n + 1/2) for n in [n_lo, n_hi] by bisection followed by
/// secant refinement.
LevelTable bohr_sommerfeld_levels(const PotentialModel& pm, int n_lo, int n_hi);

/// 2 [M / (T_n p_n(x))]^(1/2) sin[int_{x_n}^x p_n dx' + pi / 4]. Throws
/// TurningPointError within 1e-3 (x_R - x_L) of a turning point.
double wkb_eigenfunction(const PotentialModel& pm, const LevelTable& levels, int n, double x);

struct SemiclassicalChannel {
  int n = 0;
  int k = 0;
  double t0 = 0.0;
  double x0 = 0.0;
  std::vector<double> t;
  std::vector<double> x;
  // time at which the trajectory reached a turning-point buffer, if it did
  std::optional<double> exit_time;
};

/// Right-hand side of the channel equation at x.
double channel_velocity(const PotentialModel& pm, const LevelTable& levels, int n, int k, double x);

SemiclassicalChannel channel_trajectory(const PotentialModel& pm, const LevelTable& levels, int n,
                                        int k, double x0, double t0, double t_span,
                                        const OdeOptions& opt = {});

/// Distance in (-pi, pi] of
/// [(E_{n+|k|} - E_n) t0 - int_{x_n}^{x0} p_n - int_{x_{n+|k|}}^{x0} p_{n+|k|}] - pi/2 from 0 mod 2 pi.
double phase_anchor_residual(const PotentialModel& pm, const LevelTable& levels, int n, int k,
                             double x0, double t0);

/// Symmetric-well form: (E_{n+|k|} - E_n) t0 - (n + |k|/2 + 1) pi, reduced to (-pi, pi].
double phase_anchor_residual_symmetric(const LevelTable& levels, int n, int k, double t0);

/// All anchor times t0 in [t_lo, t_hi] for which the full residual vanishes.
std::vector<double> enumerate_anchors(const PotentialModel& pm, const LevelTable& levels, int n, int k,
                                      double x0, double t_lo, double t_hi);

inline constexpr double kSpacingUniformity = 0.1;

struct SlopeRatioReport {
  double ratio = 0.0;            // (E_{n+|k|} - E_n) / (E_{n+|k'|} - E_n), signed by k k'
  double expected = 0.0;         // k / k'
  double deviation = 0.0;        // |ratio - expected|
  double relative_deviation = 0.0;
  double trajectory_ratio = 0.0; // ratio of the two channel velocities at x_meet
  double spacing_variation = 0.0;
  bool refused = false;
  std::optional<std::string> warning;
};

/// Slopes of two channels k, k' meeting at x_meet. Both move with the band's
/// common momentum to leading order, so their ratio is the ratio of level
/// differences; the full channel-velocity ratio is reported alongside. Bands
/// whose level spacing varies by more than 10% are refused with a warning.
SlopeRatioReport slope_ratio_check(const PotentialModel& pm, const LevelTable& levels, int n, int k,
                                   int k_prime, double x_meet);

}  // namespace qcarpet
