#include "qcarpet/spectrum.hpp"

#include <cmath>
#include <sstream>

#include "qcarpet/error.hpp"
#include "qcarpet/kernels.hpp"

namespace qcarpet {

void BoxConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw ValidationError("box length must be > 0");
  if (!(speed > 0.0) || !std::isfinite(speed)) throw ValidationError("carpet speed must be > 0");
}

std::string tag_name(const WavefunctionTag& tag) {
  struct Visitor {
    std::string operator()(const CustomTag&) const { return "custom"; }
    std::string operator()(const UniformTag&) const { return "uniform"; }
    std::string operator()(const GaussianTag&) const { return "gaussian"; }
    std::string operator()(const SteppedTag&) const { return "stepped"; }
  };
  return std::visit(Visitor{}, tag);
}

EnergySpectrum::EnergySpectrum(BoxConfig config, std::vector<complex> amplitudes,
                               WavefunctionTag tag, std::vector<std::string> warnings)
    : config_(config), amps_(std::move(amplitudes)), tag_(tag), warnings_(std::move(warnings)) {
  config_.validate();
  if (amps_.empty()) throw ValidationError("spectrum needs at least one mode");
  std::vector<double> sq(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) sq[i] = std::norm(amps_[i]);
  norm_ = pairwise_sum(sq);
}

complex extended_amplitude(const EnergySpectrum& spec, long n) {
  if (n == 0) return {};
  const long a = n > 0 ? n : -n;
  if (a > spec.n_max()) return {};
  const complex v = spec.amplitudes()[static_cast<std::size_t>(a - 1)];
  return n > 0 ? v : -v;
}

EnergySpectrum spectrum_from_initial(const InitialWavefunction& psi0, const BoxConfig& config,
                                     int n_max, const QuadratureOptions& quad) {
  config.validate();
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  const double L = config.length;
  const double prefactor = std::sqrt(2.0 / L);
  std::vector<complex> amps(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    QuadratureOptions opt = quad;
    // roughly one panel per half wave of sin(n pi x / L)
    opt.min_panels = std::max<std::size_t>(quad.min_panels, static_cast<std::size_t>(n));
    const double kn = n * kPi / L;
    auto integrand = [&](double x) { return std::sin(kn * x) * psi0(x); };
    amps[static_cast<std::size_t>(n - 1)] =
        prefactor * integrate_pieces(integrand, 0.0, L, psi0.breakpoints, opt);
  }
  EnergySpectrum probe(config, amps, psi0.tag);
  std::vector<std::string> warnings;
  if (probe.captured_norm() < 1.0 - kCapturedNormWarning) {
    std::ostringstream os;
    os << "captured norm " << probe.captured_norm() << " below 1 - " << kCapturedNormWarning
       << " at n_max = " << n_max;
    warnings.push_back(os.str());
  }
  return EnergySpectrum(config, std::move(amps), psi0.tag, std::move(warnings));
}

InitialWavefunction initial_from_spectrum(const EnergySpectrum& spec) {
  InitialWavefunction w;
  w.tag = spec.tag();
  w.evaluator = [spec](double x) {
    const double L = spec.config().length;
    if (x <= 0.0 || x >= L) return complex{};
    // exp(i n theta) by rotation, reseeded exactly every block
    const double theta = kPi * x / L;
    const complex step = std::polar(1.0, theta);
    std::vector<complex> terms(static_cast<std::size_t>(spec.n_max()));
    complex rot;
    for (int n = 1; n <= spec.n_max(); ++n) {
      if ((n - 1) % 32 == 0)
        rot = std::polar(1.0, n * theta);
      else
        rot *= step;
      terms[static_cast<std::size_t>(n - 1)] =
          spec.amplitudes()[static_cast<std::size_t>(n - 1)] * rot.imag();
    }
    return std::sqrt(2.0 / L) * pairwise_sum(terms);
  };
  return w;
}

complex mode_phase(const BoxConfig& config, long n, double t) {
  // exp(-i pi n^2 tau) with tau = V t / L; n^2 is an integer so tau may be
  // reduced modulo 2 before the product.
  const double tau = std::fmod(config.speed * t / config.length, 2.0);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const double turns = std::fmod(n2 * tau, 2.0);
  return std::polar(1.0, -kPi * turns);
}

namespace {

std::vector<complex> timed_coefficients(const EnergySpectrum& spec, double t) {
  const long N = spec.n_max();
  std::vector<complex> c(static_cast<std::size_t>(2 * N + 1));
  for (long n = 1; n <= N; ++n) {
    const complex v = spec.amplitudes()[static_cast<std::size_t>(n - 1)] * mode_phase(spec.config(), n, t);
    c[static_cast<std::size_t>(N + n)] = v;
    c[static_cast<std::size_t>(N - n)] = -v;
  }
  return c;
}

}  // namespace

std::vector<complex> evaluate_row(const EnergySpectrum& spec, double t, std::span<const double> xs) {
  const double L = spec.config().length;
  const auto coeffs = timed_coefficients(spec, t);
  std::vector<double> theta(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) theta[i] = kPi * xs[i] / L;
  std::vector<complex> out(xs.size());
  kernels::exp_series(coeffs, -static_cast<long>(spec.n_max()), theta, out);
  const complex scale(0.0, -1.0 / std::sqrt(2.0 * L));
  for (auto& v : out) v *= scale;
  return out;
}

complex evaluate_wavefunction(const EnergySpectrum& spec, double x, double t) {
  const double xs[1] = {x};
  return evaluate_row(spec, t, xs)[0];
}

complex evaluate_sine_series(const EnergySpectrum& spec, double x, double t) {
  const double L = spec.config().length;
  std::vector<complex> terms(static_cast<std::size_t>(spec.n_max()));
  for (long n = 1; n <= spec.n_max(); ++n)
    terms[static_cast<std::size_t>(n - 1)] = spec.amplitudes()[static_cast<std::size_t>(n - 1)] *
                                             mode_phase(spec.config(), n, t) *
                                             std::sin(static_cast<double>(n) * kPi * x / L);
  return std::sqrt(2.0 / L) * pairwise_sum(terms);
}

double probability_density(const EnergySpectrum& spec, double x, double t) {
  return std::norm(evaluate_wavefunction(spec, x, t));
}

complex momentum_amplitude(const InitialWavefunction& psi0, const BoxConfig& config, double p,
                           const QuadratureOptions& quad) {
  const double L = config.length;
  QuadratureOptions opt = quad;
  opt.min_panels = std::max<std::size_t>(
      quad.min_panels, static_cast<std::size_t>(std::ceil(std::abs(p) * L / kPi)));
  auto integrand = [&](double x) { return std::polar(1.0, -p * x) * psi0(x); };
  return integrate_pieces(integrand, 0.0, L, psi0.breakpoints, opt) / std::sqrt(2.0 * kPi);
}

MomentumResidual momentum_consistency_check(const EnergySpectrum& spec,
                                            const InitialWavefunction& psi0,
                                            const QuadratureOptions& quad) {
  const double L = spec.config().length;
  const double root = std::sqrt(kPi / L);
  MomentumResidual r;
  for (int n = 1; n <= spec.n_max(); ++n) {
    const double p = n * kPi / L;
    const complex diff =
        momentum_amplitude(psi0, spec.config(), p, quad) - momentum_amplitude(psi0, spec.config(), -p, quad);
    const complex predicted = complex(0.0, root) * diff;
    const double res = std::abs(spec.amplitudes()[static_cast<std::size_t>(n - 1)] - predicted);
    if (res > r.max_residual) {
      r.max_residual = res;
      r.worst_mode = n;
    }
  }
  return r;
}

}  // namespace qcarpet
