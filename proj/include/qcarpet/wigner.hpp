#pragma once

// Wigner-function routes to the structure functions.
//
// phi(x) = 2^(-1/2) [psi(x,0) - psi(-x,0)] on (-L, L) turns the box into a free
// periodic problem, and with p_k = pi k / (2L)
//
//   S_k(x/L) = pi [W_phi(x, p_k) + (-1)^k W_phi(x - L, p_k)] - |psi_{k/2}|^2 / 2.

#include <functional>
#include <optional>
#include <vector>

#include "qcarpet/spectrum.hpp"
#include "qcarpet/travelling_waves.hpp"

namespace qcarpet {

class AntisymmetricExtension {
 public:
  /// From psi(x, 0) directly; breakpoints of psi0 are mirrored.
  static AntisymmetricExtension from_initial(const InitialWavefunction& psi0,
                                             const BoxConfig& config = {});
  /// From the truncated spectrum: L^(-1/2) sum psi_n sin(n pi x / L).
  static AntisymmetricExtension from_spectrum(const EnergySpectrum& spec);

  complex operator()(double x) const;
  double length() const { return length_; }
  /// Largest mode index the integrand may contain (sets the initial panel count).
  int bandwidth() const { return bandwidth_; }
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  std::function<complex(double)> eval_;
  double length_ = 1.0;
  int bandwidth_ = 1;
  std::vector<double> breaks_;
};

struct WignerSample {
  double x = 0.0;
  double p = 0.0;
  double w = 0.0;
  double imag_residual = 0.0;
};

/// Momentum of wave index k: p_k = pi k / (2L).
inline double wave_momentum(int k, double length) { return kPi * k / (2.0 * length); }

/// pi^-1 int_{-M}^{M} phi*(x - y) phi(x + y) exp(-2 i p y) dy, M = max(L - |x|, 0).
WignerSample wigner_of_extension(const AntisymmetricExtension& phi, double x, double p,
                                 const QuadratureOptions& quad = {});

/// Wigner function of psi(x, 0) itself (zero outside the box).
WignerSample wigner_of_initial(const InitialWavefunction& psi0, const BoxConfig& config, double x,
                               double p, const QuadratureOptions& quad = {});

/// int_{-P}^{P} W_phi(x, p) dp, with the p integral done in closed form under the y integral.
double wigner_window_marginal(const AntisymmetricExtension& phi, double x, double p_window,
                              const QuadratureOptions& quad = {});

/// Normalization of W_phi over (-L, L) x (-P, P).
double wigner_window_norm(const AntisymmetricExtension& phi, double p_window,
                          const QuadratureOptions& quad = {});

/// Momentum window |p| <= 8 pi N_max / L used for normalization checks.
inline double normalization_window(int n_max, double length) { return 8.0 * kPi * n_max / length; }

double structure_from_wigner(const AntisymmetricExtension& phi, const EnergySpectrum& spec, int k,
                             double x, const QuadratureOptions& quad = {});

/// Interference term I_psi(x, p_k) including the reflection rule for x > L/2.
double interference_term(const InitialWavefunction& psi0, const BoxConfig& config, int k, double x,
                         const QuadratureOptions& quad = {});

/// (pi/2)[W_psi(x, p_k) + (-1)^k W_psi(L - x, -p_k)] - [I_psi(x, p_k) + |psi_{k/2}|^2] / 2.
double structure_wigpsi(const InitialWavefunction& psi0, const EnergySpectrum& spec, int k,
                        double x, const QuadratureOptions& quad = {});

/// S_k(l) = (-1)^(kl+1) [int_0^L P(x,0) cos(pi k x / L) dx + |psi_{k/2}|^2 / 2].
double corner_value(const InitialWavefunction& psi0, const EnergySpectrum& spec, int k, int l,
                    const QuadratureOptions& quad = {});
/// Same with P(x, 0) taken from the truncated spectrum.
double corner_value(const EnergySpectrum& spec, int k, int l, const QuadratureOptions& quad = {});

/// |psi_{k/2}|^2, zero for odd k.
double half_index_weight(const EnergySpectrum& spec, int k);

enum class Modulation { enhanced, suppressed, neutral };
std::string_view modulation_name(Modulation m);

inline constexpr double kNearIntegerTolerance = 0.05;
inline constexpr std::size_t kSymmetryCandidates = 400;

struct LocalizationPrediction {
  int k = 0;
  int l = 0;
  double symmetry_ratio = 0.0;  // k x* / L
  double centroid_ratio = 0.0;  // k x0 / L
  Modulation modulation = Modulation::neutral;
  long j = 0;                   // nearest integer of k x*/L when enhanced
  std::optional<StructureKind> kind;
  double cosine_factor = 0.0;   // cos(pi k x* / L)
};

struct LocalizationReport {
  double symmetry_point = 0.0;  // x*
  double asymmetry = 0.0;       // int |P(x*+u) - P(x*-u)| du at x*
  double centroid = 0.0;        // x0
  std::vector<LocalizationPrediction> predictions;
};

/// Reflection-symmetry point by grid search, centroid by quadrature, then for
/// 1 <= k <= k_max and l in l_values: enhanced when k x*/L is within 0.05 of an
/// integer j (ridge when j + kl is odd, channel when even), suppressed when
/// within 0.05 of j + 1/2.
LocalizationReport symmetry_and_localization_report(const std::function<double(double)>& density,
                                                    const BoxConfig& config, int k_max,
                                                    std::vector<int> l_values = {0, 1},
                                                    std::vector<double> breakpoints = {});

}  // namespace qcarpet
