#include "qcarpet/grating.hpp"

#include <cmath>

#include "qcarpet/error.hpp"
#include "qcarpet/kernels.hpp"

namespace qcarpet {

PeriodicSpectrum::PeriodicSpectrum(std::vector<complex> coefficients, double length, double speed)
    : coeffs_(std::move(coefficients)), length_(length), speed_(speed) {
  if (coeffs_.empty() || coeffs_.size() % 2 == 0)
    throw ValidationError("periodic spectrum needs an odd number of coefficients (n = -N..N)");
  if (!(length > 0.0) || !(speed > 0.0)) throw ValidationError("length and speed must be > 0");
  n_max_ = static_cast<int>(coeffs_.size() / 2);
  std::vector<double> w(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) w[i] = std::norm(coeffs_[i]);
  intensity_ = pairwise_sum(w);
}

complex PeriodicSpectrum::coefficient(long n) const {
  if (n < -n_max_ || n > n_max_) return {};
  return coeffs_[static_cast<std::size_t>(n + n_max_)];
}

namespace {

complex propagation_phase(const PeriodicSpectrum& ps, long n, double z) {
  const double tau = std::fmod(ps.speed() * z / ps.length(), 2.0);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return std::polar(1.0, -kPi * std::fmod(n2 * tau, 2.0));
}

}  // namespace

std::vector<complex> periodic_field_row(const PeriodicSpectrum& ps, double z, std::span<const double> xs) {
  const long N = ps.n_max();
  std::vector<complex> c(ps.coefficients().begin(), ps.coefficients().end());
  for (long n = -N; n <= N; ++n) c[static_cast<std::size_t>(n + N)] *= propagation_phase(ps, n, z);
  std::vector<double> theta(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) theta[i] = kPi * xs[i] / ps.length();
  std::vector<complex> out(xs.size());
  kernels::exp_series(c, -N, theta, out);
  const double scale = 1.0 / std::sqrt(2.0 * ps.length());
  for (auto& v : out) v *= scale;
  return out;
}

complex periodic_field(const PeriodicSpectrum& ps, double x, double z) {
  const double xs[] = {x};
  return periodic_field_row(ps, z, xs)[0];
}

double intensity(const PeriodicSpectrum& ps, double x, double z) { return std::norm(periodic_field(ps, x, z)); }

double grating_structure(const PeriodicSpectrum& ps, int k, double z) {
  const long N = ps.n_max();
  std::vector<complex> terms;
  for (long m = -N; m <= N; ++m) {
    const complex b = ps.coefficient(k - m);
    if (b == complex{}) continue;
    const double angle = -static_cast<double>(2 * m - k) * kPi * z;
    terms.push_back(std::conj(ps.coefficient(m)) * b * std::polar(1.0, angle));
  }
  double value = pairwise_sum(terms).real();
  if (k % 2 == 0) value -= std::norm(ps.coefficient(k / 2));
  return value;
}

double reconstruct_intensity(const PeriodicSpectrum& ps, int k_max, double x, double z) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  const double L = ps.length();
  std::vector<double> terms;
  for (int k = -k_max; k <= k_max; ++k) terms.push_back(grating_structure(ps, k, (x - k * ps.speed() * z) / L));
  return (ps.intensity() + pairwise_sum(terms)) / (2.0 * L);
}

double lane_contrast(const PeriodicSpectrum& ps, int k, double x0) {
  return (ps.intensity() + grating_structure(ps, k, x0 / ps.length())) / (2.0 * ps.length());
}

std::size_t minimum_lane_samples(const PeriodicSpectrum& ps, Slope slope) {
  return oracle_detail::minimum_samples(ps.coefficients(), -ps.n_max(), slope);
}

double lane_contrast_oracle(const PeriodicSpectrum& ps, Slope slope, double x0, std::size_t samples) {
  return oracle_detail::line_mean(ps.coefficients(), -ps.n_max(), ps.length(), slope, x0, samples,
                                  1.0 / (2.0 * ps.length()));
}

double periodic_wigner(const PeriodicSpectrum& ps, double x, double p, const QuadratureOptions& quad) {
  const double L = ps.length();
  QuadratureOptions opt = quad;
  const double cycles = 2.0 * L * (2.0 * ps.n_max() / (2.0 * L) + std::abs(p) / kPi);
  opt.min_panels = std::max(quad.min_panels, static_cast<std::size_t>(std::ceil(cycles)) + 4);
  opt.abs_tol = std::max(opt.abs_tol, 1e-14 * std::max(1.0, ps.intensity()));
  auto f = [&](double y) {
    return std::conj(periodic_field(ps, x - y, 0.0)) * periodic_field(ps, x + y, 0.0) *
           std::polar(1.0, -2.0 * p * y);
  };
  return integrate(f, -L, L, opt).real() / kPi;
}

double structure_from_periodic_wigner(const PeriodicSpectrum& ps, int k, double x, const QuadratureOptions& quad) {
  const double w = periodic_wigner(ps, x, kPi * k / (2.0 * ps.length()), quad);
  const double half = k % 2 == 0 ? std::norm(ps.coefficient(k / 2)) : 0.0;
  return kPi * w - half;
}

PeriodicSpectrum sinusoidal_grating(double alpha, double intensity, double length, double speed) {
  if (!(intensity > 0.0)) throw ValidationError("intensity must be > 0");
  if (!std::isfinite(alpha)) throw ValidationError("alpha must be finite");
  int N = 0;
  // J_n decreases monotonically once n exceeds |alpha|
  while (N < 10000) {
    const int n = N + 1;
    if (n > std::abs(alpha) && std::abs(bessel_j(n, alpha)) < kJacobiAngerCutoff) break;
    N = n;
  }
  std::vector<complex> c(static_cast<std::size_t>(2 * N + 1));
  const double amp = std::sqrt(intensity);
  const complex powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int n = -N; n <= N; ++n) {
    const complex in = powers[((n % 4) + 4) % 4];
    c[static_cast<std::size_t>(n + N)] = amp * in * bessel_j(n, alpha);
  }
  return PeriodicSpectrum(std::move(c), length, speed);
}

double sinusoidal_contrast_uncorrected(double alpha, int k, double x0, double intensity, double length) {
  return intensity / (2.0 * length) *
         (1.0 + parity_sign(k) * bessel_j(k, 2.0 * alpha * std::sin(kPi * x0 / length)));
}

double sinusoidal_contrast(double alpha, int k, double x0, double intensity, double length) {
  const double half = k % 2 == 0 ? std::pow(bessel_j(k / 2, alpha), 2) : 0.0;
  return sinusoidal_contrast_uncorrected(alpha, k, x0, intensity, length) - intensity / (2.0 * length) * half;
}

double RotatorConfig::speed() const {
  validate();
  return 1.0 / (2.0 * inertia);
}

void RotatorConfig::validate() const {
  if (!(inertia > 0.0) || !std::isfinite(inertia)) throw ValidationError("moment of inertia must be > 0");
}

PeriodicSpectrum rotator_spectrum(const RotatorConfig& config, std::vector<complex> amplitudes) {
  return PeriodicSpectrum(std::move(amplitudes), config.length(), config.speed());
}

}  // namespace qcarpet
