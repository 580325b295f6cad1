#include "qcarpet/analytic.hpp"

#include <cmath>
#include <sstream>

#include "qcarpet/error.hpp"

namespace qcarpet::analytic {

namespace {

double frac(double v) { return v - std::floor(v); }

}  // namespace

int sign_function(double x, double length) {
  const double f = frac(x / length);
  if (f < 0.5) return 1;
  if (f > 0.5) return -1;
  return 0;
}

EnergySpectrum uniform_spectrum(int n_max, const BoxConfig& config) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  std::vector<complex> amps(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; n += 2) amps[static_cast<std::size_t>(n - 1)] = 2.0 * std::sqrt(2.0) / (n * kPi);
  return EnergySpectrum(config, std::move(amps), UniformTag{});
}

InitialWavefunction uniform_wavefunction(const BoxConfig& config) {
  InitialWavefunction w;
  const double L = config.length;
  const double value = 1.0 / std::sqrt(L);
  w.evaluator = [L, value](double x) { return (x > 0.0 && x < L) ? complex(value) : complex{}; };
  w.tag = UniformTag{};
  return w;
}

double uniform_structure_closed(int k, double z) {
  if (k % 2 != 0) return 0.0;
  const int j = k / 2;
  // S_{2j}(z + 1) = S_{2j}(z)
  const double zr = frac(z);
  const double m = std::min(zr, 1.0 - zr);
  if (j == 0) return 4.0 * m - 1.0;
  const double psi_j = (j % 2 != 0) ? 2.0 * std::sqrt(2.0) / (std::abs(j) * kPi) : 0.0;
  return 2.0 / (kPi * j) * std::sin(2.0 * kPi * j * m) - 0.5 * psi_j * psi_j;
}

double uniform_carpet_closed(double x, double t, int k_max, const BoxConfig& config) {
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  const double L = config.length;
  const double V = config.speed;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * k_max + 2));
  for (int k = -k_max; k <= k_max; ++k) {
    const double u = x - 2.0 * k * V * t;
    if (k == 0) {
      const double z = frac(u / L);
      terms.push_back(4.0 * sign_function(u, L) * z / L);
      continue;
    }
    terms.push_back(2.0 / (kPi * k * L) * sign_function(u, L) * std::sin(2.0 * kPi * k * u / L));
  }
  terms.push_back((1.0 - 2.0 * sign_function(x, L)) / L);
  return pairwise_sum(terms);
}

double uniform_carpet_tail_bound(int k_max) { return 4.0 / (kPi * kPi * k_max); }

InitialWavefunction gaussian_wavefunction(double center, double width, double momentum,
                                          const BoxConfig& config) {
  if (!(width > 0.0)) throw ValidationError("gaussian width must be > 0");
  InitialWavefunction w;
  const double L = config.length;
  const double amp = std::pow(2.0 * kPi * width * width, -0.25);
  w.evaluator = [=](double x) {
    if (x <= 0.0 || x >= L) return complex{};
    const double d = x - center;
    return amp * std::exp(-d * d / (4.0 * width * width)) * std::polar(1.0, momentum * x);
  };
  w.tag = GaussianTag{center, width, momentum};
  if (center > 0.0 && center < L) w.breakpoints.push_back(center);
  return w;
}

bool gaussian_well_localized(double center, double width, const BoxConfig& config) {
  return 4.0 * width < std::min(center, config.length - center);
}

EnergySpectrum gaussian_spectrum(double center, double width, double momentum, int n_max,
                                 const BoxConfig& config) {
  const auto psi0 = gaussian_wavefunction(center, width, momentum, config);
  QuadratureOptions quad;
  // start with panels no wider than the packet so the peak is never missed
  quad.min_panels = static_cast<std::size_t>(std::ceil(config.length / width));
  EnergySpectrum raw = spectrum_from_initial(psi0, config, n_max, quad);
  std::vector<std::string> warnings = raw.warnings();
  if (!gaussian_well_localized(center, width, config)) {
    std::ostringstream os;
    os << "gaussian outside the K ~ 1 regime: 4 sigma = " << 4.0 * width
       << " >= min(center, L - center) = " << std::min(center, config.length - center);
    warnings.push_back(os.str());
  }
  std::vector<complex> amps(raw.amplitudes().begin(), raw.amplitudes().end());
  return EnergySpectrum(config, std::move(amps), raw.tag(), std::move(warnings));
}

complex gaussian_momentum_amplitude(double center, double width, double momentum, double p) {
  const double d = p - momentum;
  return std::pow(2.0 * width * width / kPi, 0.25) * std::exp(-width * width * d * d) *
         std::polar(1.0, -d * center);
}

double gaussian_structure_closed(double center, double width, double momentum, int k, double x,
                                 const BoxConfig& config) {
  const double L = config.length;
  // reduce into [0, L) with S_k(z + 1) = (-1)^k S_k(z)
  const double shifts = std::floor(x / L);
  if (shifts != 0.0) {
    const double sign = (k % 2 != 0 && std::fmod(std::abs(shifts), 2.0) == 1.0) ? -1.0 : 1.0;
    return sign * gaussian_structure_closed(center, width, momentum, k, x - shifts * L, config);
  }
  const double s2 = width * width;
  const double pk = kPi * k / (2.0 * L);
  const double sgn = parity_sign(k);
  const double d1 = x - center;
  const double d2 = L - x - center;
  const double wig = 0.5 * (std::exp(-d1 * d1 / (2.0 * s2)) * std::exp(-2.0 * s2 * (pk - momentum) * (pk - momentum)) +
                            sgn * std::exp(-d2 * d2 / (2.0 * s2)) *
                                std::exp(-2.0 * s2 * (pk + momentum) * (pk + momentum)));
  const double damp = std::exp(-kPi * kPi * k * k * s2 / (2.0 * L * L));
  double interference = 0.0;
  if (x <= 0.5 * L) {
    interference = std::exp(-x * x / (2.0 * s2)) * damp * std::cos(2.0 * (pk * center - momentum * x));
  } else {
    const double r = L - x;
    interference = sgn * std::exp(-r * r / (2.0 * s2)) * damp * std::cos(2.0 * (pk * center + momentum * r));
  }
  return wig - interference;
}

EnergySpectrum stepped_spectrum(int count, int period, int offset, int n_max, const BoxConfig& config) {
  if (count < 1) throw ValidationError("stepped spectrum needs count >= 1");
  if (period < 1 || offset < 0 || offset >= period)
    throw ValidationError("stepped spectrum needs period >= 1 and 0 <= offset < period");
  const int j0 = offset == 0 ? 1 : 0;
  const int top = period * (j0 + count - 1) + offset;
  const int size = std::max(top, n_max);
  std::vector<complex> amps(static_cast<std::size_t>(size));
  const double a = 1.0 / std::sqrt(static_cast<double>(count));
  for (int j = j0; j < j0 + count; ++j) amps[static_cast<std::size_t>(period * j + offset - 1)] = a;
  return EnergySpectrum(config, std::move(amps), SteppedTag{period, offset, count});
}

EnergySpectrum block_spectrum(int first, int count, const BoxConfig& config) {
  if (first < 0 || count < 1) throw ValidationError("block spectrum needs first >= 0, count >= 1");
  std::vector<complex> amps(static_cast<std::size_t>(first + count));
  const double a = 1.0 / std::sqrt(static_cast<double>(count));
  for (int n = first + 1; n <= first + count; ++n) amps[static_cast<std::size_t>(n - 1)] = a;
  return EnergySpectrum(config, std::move(amps));
}

EnergySpectrum eigenstate_spectrum(int n, int n_max, const BoxConfig& config) {
  if (n < 1) throw ValidationError("eigenstate index must be >= 1");
  std::vector<complex> amps(static_cast<std::size_t>(std::max(n, n_max)));
  amps[static_cast<std::size_t>(n - 1)] = 1.0;
  return EnergySpectrum(config, std::move(amps));
}

}  // namespace qcarpet::analytic
