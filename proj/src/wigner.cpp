#include "qcarpet/wigner.hpp"

#include <algorithm>
#include <cmath>

#include "qcarpet/error.hpp"

namespace qcarpet {

namespace {

std::size_t panels_for(double bandwidth, double p, double span, double length) {
  const double cycles = span * (bandwidth / length + std::abs(p) / kPi);
  return static_cast<std::size_t>(std::ceil(cycles)) + 4;
}

// Wigner integrands are products of wavefunction values; where both factors
// are tiny their relative accuracy is lost, so the absolute floor is set on the
// unit scale of a normalized state.
constexpr double kWignerAbsTol = 1e-14;

QuadratureOptions floored(const QuadratureOptions& quad) {
  QuadratureOptions opt = quad;
  opt.abs_tol = std::max(opt.abs_tol, kWignerAbsTol);
  return opt;
}

int tag_bandwidth(const WavefunctionTag& tag, double length) {
  if (const auto* g = std::get_if<GaussianTag>(&tag))
    return static_cast<int>(std::ceil((std::abs(g->momentum) + 5.0 / g->width) * length / kPi));
  return 16;
}

// Breakpoints in y of f(x - y) and f(x + y) given breakpoints of f.
std::vector<double> mirrored_breaks(const std::vector<double>& breaks, double x) {
  std::vector<double> out;
  out.reserve(2 * breaks.size());
  for (double b : breaks) {
    out.push_back(x - b);
    out.push_back(b - x);
  }
  return out;
}

}  // namespace

AntisymmetricExtension AntisymmetricExtension::from_initial(const InitialWavefunction& psi0,
                                                            const BoxConfig& config) {
  AntisymmetricExtension ext;
  ext.length_ = config.length;
  ext.bandwidth_ = tag_bandwidth(psi0.tag, config.length);
  const double L = config.length;
  ext.eval_ = [psi0, L](double x) -> complex {
    if (x > 0.0 && x < L) return psi0(x) / std::sqrt(2.0);
    if (x < 0.0 && x > -L) return -psi0(-x) / std::sqrt(2.0);
    return {};
  };
  ext.breaks_.push_back(0.0);
  for (double b : psi0.breakpoints) {
    ext.breaks_.push_back(b);
    ext.breaks_.push_back(-b);
  }
  return ext;
}

AntisymmetricExtension AntisymmetricExtension::from_spectrum(const EnergySpectrum& spec) {
  AntisymmetricExtension ext;
  ext.length_ = spec.config().length;
  ext.bandwidth_ = std::max(1, spec.n_max());
  const InitialWavefunction psi = initial_from_spectrum(spec);
  const double L = ext.length_;
  // the sine series is already odd; only the |x| >= L cut remains
  ext.eval_ = [psi, L](double x) -> complex {
    if (x == 0.0 || std::abs(x) >= L) return {};
    return x > 0.0 ? psi(x) / std::sqrt(2.0) : -psi(-x) / std::sqrt(2.0);
  };
  return ext;
}

complex AntisymmetricExtension::operator()(double x) const { return eval_(x); }

WignerSample wigner_of_extension(const AntisymmetricExtension& phi, double x, double p,
                                 const QuadratureOptions& quad) {
  const double L = phi.length();
  if (!(std::abs(x) < L)) throw ValidationError("wigner_of_extension requires |x| < L");
  WignerSample sample{x, p, 0.0, 0.0};
  const double M = std::max(L - std::abs(x), 0.0);
  if (M == 0.0) return sample;
  QuadratureOptions opt = floored(quad);
  opt.min_panels = std::max(quad.min_panels, panels_for(2.0 * phi.bandwidth(), 2.0 * p, 2.0 * M, 2.0 * L));
  auto f = [&](double y) { return std::conj(phi(x - y)) * phi(x + y) * std::polar(1.0, -2.0 * p * y); };
  const complex value = integrate_pieces(f, -M, M, mirrored_breaks(phi.breakpoints(), x), opt) / kPi;
  sample.w = value.real();
  sample.imag_residual = std::abs(value.imag());
  return sample;
}

WignerSample wigner_of_initial(const InitialWavefunction& psi0, const BoxConfig& config, double x,
                               double p, const QuadratureOptions& quad) {
  const double L = config.length;
  WignerSample sample{x, p, 0.0, 0.0};
  const double m = std::min(x, L - x);
  if (!(m > 0.0)) return sample;
  QuadratureOptions opt = floored(quad);
  opt.min_panels = std::max(
      quad.min_panels, panels_for(2.0 * tag_bandwidth(psi0.tag, L), 2.0 * p, 2.0 * m, 2.0 * L));
  auto f = [&](double y) {
    return std::conj(psi0(x - y)) * psi0(x + y) * std::polar(1.0, -2.0 * p * y);
  };
  const complex value = integrate_pieces(f, -m, m, mirrored_breaks(psi0.breakpoints, x), opt) / kPi;
  sample.w = value.real();
  sample.imag_residual = std::abs(value.imag());
  return sample;
}

double wigner_window_marginal(const AntisymmetricExtension& phi, double x, double p_window,
                              const QuadratureOptions& quad) {
  const double L = phi.length();
  const double M = std::max(L - std::abs(x), 0.0);
  if (M == 0.0) return 0.0;
  // int_{-P}^{P} exp(-2 i p y) dp = sin(2 P y) / y. The y integrand is then a
  // band-limited oscillation of known frequency, integrated with a fixed
  // composite rule at two panels per cycle.
  auto kernel = [p_window](double y) {
    const double a = 2.0 * p_window * y;
    return std::abs(a) < 1e-8 ? 2.0 * p_window : std::sin(a) / y;
  };
  auto f = [&](double y) { return (std::conj(phi(x - y)) * phi(x + y)).real() * kernel(y); };
  auto breaks = mirrored_breaks(phi.breakpoints(), x);
  breaks.push_back(0.0);
  std::vector<double> edges{-M};
  std::sort(breaks.begin(), breaks.end());
  for (double b : breaks)
    if (b > edges.back() && b < M) edges.push_back(b);
  edges.push_back(M);
  const double panels_total =
      2.0 * static_cast<double>(panels_for(2.0 * phi.bandwidth(), 2.0 * p_window, 2.0 * M, 2.0 * L));
  std::vector<double> pieces;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double frac = (edges[i + 1] - edges[i]) / (2.0 * M);
    const auto panels = std::max<std::size_t>(
        std::max<std::size_t>(quad.min_panels, 2), static_cast<std::size_t>(std::ceil(frac * panels_total)));
    double l1 = 0.0;
    pieces.push_back(detail::composite_rule(f, edges[i], edges[i + 1], panels, l1));
  }
  return pairwise_sum(pieces) / kPi;
}

double wigner_window_norm(const AntisymmetricExtension& phi, double p_window,
                          const QuadratureOptions& quad) {
  const double L = phi.length();
  QuadratureOptions outer = quad;
  outer.rel_tol = std::max(quad.rel_tol, 1e-8);
  outer.min_panels = std::max<std::size_t>(quad.min_panels, 64);
  QuadratureOptions inner;
  return integrate_pieces([&](double x) { return wigner_window_marginal(phi, x, p_window, inner); },
                          -L, L, phi.breakpoints(), outer);
}

double half_index_weight(const EnergySpectrum& spec, int k) {
  if (k % 2 != 0) return 0.0;
  return std::norm(extended_amplitude(spec, k / 2));
}

double structure_from_wigner(const AntisymmetricExtension& phi, const EnergySpectrum& spec, int k,
                             double x, const QuadratureOptions& quad) {
  const double L = phi.length();
  if (x < 0.0 || x >= L) throw ValidationError("structure_from_wigner requires 0 <= x < L");
  const double pk = wave_momentum(k, L);
  const double direct = wigner_of_extension(phi, x, pk, quad).w;
  const double shifted = x == 0.0 ? 0.0 : wigner_of_extension(phi, x - L, pk, quad).w;
  return kPi * (direct + parity_sign(k) * shifted) - 0.5 * half_index_weight(spec, k);
}

namespace {

double interference_half(const InitialWavefunction& psi0, const BoxConfig& config, int k, double x,
                         const QuadratureOptions& quad) {
  const double L = config.length;
  if (!(x < 0.5 * L)) return 0.0;
  const double q = kPi * k / L;
  QuadratureOptions opt = floored(quad);
  opt.min_panels = std::max(quad.min_panels,
                            panels_for(2.0 * tag_bandwidth(psi0.tag, L), q, L - 2.0 * x, 2.0 * L));
  auto f = [&](double y) { return std::conj(psi0(y + x)) * psi0(y - x) * std::polar(1.0, q * y); };
  std::vector<double> breaks;
  for (double b : psi0.breakpoints) {
    breaks.push_back(b - x);
    breaks.push_back(b + x);
  }
  return 2.0 * integrate_pieces(f, x, L - x, breaks, opt).real();
}

}  // namespace

double interference_term(const InitialWavefunction& psi0, const BoxConfig& config, int k, double x,
                         const QuadratureOptions& quad) {
  const double L = config.length;
  if (x <= 0.5 * L) return interference_half(psi0, config, k, x, quad);
  return parity_sign(k) * interference_half(psi0, config, -k, L - x, quad);
}

double structure_wigpsi(const InitialWavefunction& psi0, const EnergySpectrum& spec, int k,
                        double x, const QuadratureOptions& quad) {
  const BoxConfig& config = spec.config();
  const double L = config.length;
  if (x < 0.0 || x >= L) throw ValidationError("structure_wigpsi requires 0 <= x < L");
  QuadratureOptions opt = floored(quad);
  opt.min_panels = std::max(quad.min_panels, static_cast<std::size_t>(spec.n_max()) + 4);
  const double pk = wave_momentum(k, L);
  const double w1 = wigner_of_initial(psi0, config, x, pk, opt).w;
  const double w2 = wigner_of_initial(psi0, config, L - x, -pk, opt).w;
  const double inter = interference_term(psi0, config, k, x, opt);
  return 0.5 * kPi * (w1 + parity_sign(k) * w2) - 0.5 * (inter + half_index_weight(spec, k));
}

double corner_value(const InitialWavefunction& psi0, const EnergySpectrum& spec, int k, int l,
                    const QuadratureOptions& quad) {
  const double L = spec.config().length;
  QuadratureOptions opt = floored(quad);
  opt.min_panels = std::max(quad.min_panels, static_cast<std::size_t>(spec.n_max() + std::abs(k)) + 4);
  const double cosine = integrate_pieces(
      [&](double x) { return std::norm(psi0(x)) * std::cos(kPi * k * x / L); }, 0.0, L,
      psi0.breakpoints, opt);
  return parity_sign(static_cast<long>(k) * l + 1) * (cosine + 0.5 * half_index_weight(spec, k));
}

double corner_value(const EnergySpectrum& spec, int k, int l, const QuadratureOptions& quad) {
  return corner_value(initial_from_spectrum(spec), spec, k, l, quad);
}

std::string_view modulation_name(Modulation m) {
  switch (m) {
    case Modulation::enhanced: return "enhanced";
    case Modulation::suppressed: return "suppressed";
    case Modulation::neutral: return "neutral";
  }
  return "neutral";
}

namespace {

// Fixed composite rule; the integrand has kinks wherever P does.
double asymmetry(const std::function<double(double)>& density, double L, double c) {
  auto P = [&](double x) { return (x > 0.0 && x < L) ? density(x) : 0.0; };
  // the mirrored point leaves the box at u = min(c, L - c): split the rule there
  const double inner = std::min(c, L - c), reach = std::max(c, L - c);
  const auto& rule = detail::gauss_legendre_16();
  constexpr int kPanels = 128;
  double total = 0.0;
  for (auto [a, b] : {std::pair{0.0, inner}, std::pair{inner, reach}}) {
    const double h = (b - a) / kPanels;
    for (int i = 0; i < kPanels && h > 0.0; ++i) {
      const double mid = a + (i + 0.5) * h;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double u = mid + 0.5 * h * rule.nodes[q];
        total += 0.5 * h * rule.weights[q] * std::abs(P(c + u) - P(c - u));
      }
    }
  }
  return total;
}

}  // namespace

LocalizationReport symmetry_and_localization_report(const std::function<double(double)>& density,
                                                    const BoxConfig& config, int k_max,
                                                    std::vector<int> l_values,
                                                    std::vector<double> breakpoints) {
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  const double L = config.length;
  LocalizationReport report;

  // grid search, then golden-section refinement inside the neighbouring cells
  const double h = L / static_cast<double>(kSymmetryCandidates);
  double best_c = 0.5 * L;
  double best_a = asymmetry(density, L, best_c);
  for (std::size_t i = 1; i < kSymmetryCandidates; ++i) {
    const double c = static_cast<double>(i) * h;
    const double a = asymmetry(density, L, c);
    if (a < best_a) {
      best_a = a;
      best_c = c;
    }
  }
  double lo = std::max(0.0, best_c - h), hi = std::min(L, best_c + h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = hi - g * (hi - lo), c2 = lo + g * (hi - lo);
  double a1 = asymmetry(density, L, c1), a2 = asymmetry(density, L, c2);
  for (int it = 0; it < 40; ++it) {
    if (a1 <= a2) {
      hi = c2;
      c2 = c1;
      a2 = a1;
      c1 = hi - g * (hi - lo);
      a1 = asymmetry(density, L, c1);
    } else {
      lo = c1;
      c1 = c2;
      a1 = a2;
      c2 = lo + g * (hi - lo);
      a2 = asymmetry(density, L, c2);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double refined_a = asymmetry(density, L, refined);
  report.symmetry_point = refined_a <= best_a ? refined : best_c;
  report.asymmetry = std::min(refined_a, best_a);

  QuadratureOptions quad;
  quad.rel_tol = 1e-9;
  quad.min_panels = 16;
  const double mass = integrate_pieces(density, 0.0, L, breakpoints, quad);
  const double first = integrate_pieces([&](double x) { return x * density(x); }, 0.0, L, breakpoints, quad);
  report.centroid = first / mass;

  for (int k = 1; k <= k_max; ++k) {
    for (int l : l_values) {
      LocalizationPrediction pred;
      pred.k = k;
      pred.l = l;
      pred.symmetry_ratio = k * report.symmetry_point / L;
      pred.centroid_ratio = k * report.centroid / L;
      pred.cosine_factor = std::cos(kPi * pred.symmetry_ratio);
      const double r = pred.symmetry_ratio;
      const double nearest = std::round(r);
      const double nearest_half = std::floor(r) + 0.5;
      if (std::abs(r - nearest) <= kNearIntegerTolerance) {
        pred.modulation = Modulation::enhanced;
        pred.j = static_cast<long>(nearest);
        // mean density (1 - (-1)^(j + kl)) / L
        pred.kind = (pred.j + static_cast<long>(k) * l) % 2 == 0 ? StructureKind::channel
                                                                   : StructureKind::ridge;
      } else if (std::abs(r - nearest_half) <= kNearIntegerTolerance) {
        pred.modulation = Modulation::suppressed;
        pred.j = static_cast<long>(std::floor(r));
      }
      report.predictions.push_back(pred);
    }
  }
  return report;
}

}  // namespace qcarpet
