#include "qcarpet/interference.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "qcarpet/error.hpp"

namespace qcarpet {

std::optional<LineEntry> LineFamily::find(double slope, double intercept, double tol) const {
  for (const auto& e : entries)
    if (std::abs(e.slope - slope) <= tol && std::abs(e.intercept - intercept) <= tol) return e;
  return std::nullopt;
}

LineFamily predict_lines(int k_max, IndexRange l_range) {
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  LineFamily family;
  for (int k = -k_max; k <= k_max; ++k)
    for (int l = l_range.lo; l <= l_range.hi; ++l) {
      LineEntry e;
      e.k = k;
      e.l = l;
      e.kind = (static_cast<long>(k) * l) % 2 == 0 ? StructureKind::channel : StructureKind::ridge;
      e.slope = k;
      e.intercept = l;
      family.entries.push_back(e);
    }
  return family;
}

LineFamily predict_lines_periodic(int period, int offset, int k_max, IndexRange l_range) {
  if (period < 1) throw ValidationError("period must be >= 1");
  if (offset < 0 || offset >= period) throw ValidationError("offset must satisfy 0 <= r < p");
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  LineFamily family;
  family.provenance = PeriodicProvenance{period, offset};
  for (int k = -k_max; k <= k_max; ++k)
    for (int l = l_range.lo; l <= l_range.hi; ++l) {
      // (k + 2r/p) l = (k p + 2 r) l / p
      const long numerator = (static_cast<long>(k) * period + 2L * offset) * l;
      if (numerator % period != 0) continue;
      const long value = numerator / period;
      LineEntry e;
      e.k = k;
      e.l = l;
      e.kind = value % 2 == 0 ? StructureKind::channel : StructureKind::ridge;
      e.slope = static_cast<double>(k) * period;
      e.intercept = static_cast<double>(l) / period;
      family.entries.push_back(e);
    }
  return family;
}

PeriodicProvenance detect_amplitude_period(const EnergySpectrum& spec, double cutoff) {
  int first = 0;
  long g = 0;
  for (int n = 1; n <= spec.n_max(); ++n) {
    if (std::abs(spec.amplitudes()[static_cast<std::size_t>(n - 1)]) <= cutoff) continue;
    if (first == 0) {
      first = n;
      continue;
    }
    g = std::gcd(g, static_cast<long>(n - first));
  }
  if (first == 0 || g == 0) return {1, 0};
  return {static_cast<int>(g), static_cast<int>(first % g)};
}

namespace {

double neighbour_overlap(const EnergySpectrum& spec, int k) {
  const long ak = std::abs(k);
  std::vector<double> terms;
  for (long n = 1; n + ak <= spec.n_max(); ++n)
    terms.push_back((std::conj(extended_amplitude(spec, n)) * extended_amplitude(spec, n + ak)).real());
  return pairwise_sum(terms);
}

}  // namespace

double depth_estimate(const EnergySpectrum& spec, int k) {
  return (spec.captured_norm() - neighbour_overlap(spec, k)) / spec.config().length;
}

double ridge_height_estimate(const EnergySpectrum& spec, int k) {
  return (spec.captured_norm() + neighbour_overlap(spec, k)) / spec.config().length;
}

int localization_bound(double momentum_spread, const BoxConfig& config) {
  if (std::isnan(momentum_spread) || momentum_spread < 0.0)
    throw ValidationError("momentum spread must be >= 0");
  if (!std::isfinite(momentum_spread)) return kVisibilityCap;
  const double unit = kPi / config.length;
  const double k = std::floor(kVisibilityFactor * momentum_spread / unit);
  return static_cast<int>(std::min<double>(k, kVisibilityCap));
}

double momentum_spread(const InitialWavefunction& psi0, const BoxConfig& config) {
  if (const auto* g = std::get_if<GaussianTag>(&psi0.tag)) return 1.0 / (2.0 * g->width);
  const double L = config.length;
  const double edge = 1e-9 * L;
  if (std::norm(psi0(edge)) > 1e-12 || std::norm(psi0(L - edge)) > 1e-12)
    return std::numeric_limits<double>::infinity();
  // fourth-order differences; one-sided near the walls so no sample leaves the box
  const double h = 1e-3 * L;
  auto deriv = [&](double x) -> complex {
    if (x < 2.0 * h)
      return (-25.0 * psi0(x) + 48.0 * psi0(x + h) - 36.0 * psi0(x + 2 * h) + 16.0 * psi0(x + 3 * h) -
              3.0 * psi0(x + 4 * h)) / (12.0 * h);
    if (x > L - 2.0 * h)
      return (25.0 * psi0(x) - 48.0 * psi0(x - h) + 36.0 * psi0(x - 2 * h) - 16.0 * psi0(x - 3 * h) +
              3.0 * psi0(x - 4 * h)) / (12.0 * h);
    return (-psi0(x + 2 * h) + 8.0 * psi0(x + h) - 8.0 * psi0(x - h) + psi0(x - 2 * h)) / (12.0 * h);
  };
  QuadratureOptions quad;
  quad.rel_tol = 1e-9;
  quad.min_panels = 16;
  std::vector<double> breaks = psi0.breakpoints;
  breaks.push_back(2.0 * h);
  breaks.push_back(L - 2.0 * h);
  const double p2 = integrate_pieces([&](double x) { return std::norm(deriv(x)); }, 0.0, L, breaks, quad);
  const double p1 = integrate_pieces(
      [&](double x) { return (std::conj(psi0(x)) * complex(0.0, -1.0) * deriv(x)).real(); }, 0.0, L, breaks, quad);
  return std::sqrt(std::max(0.0, p2 - p1 * p1));
}

double momentum_spread(const EnergySpectrum& spec) {
  const double unit = kPi / spec.config().length;
  std::vector<double> terms;
  for (int n = 1; n <= spec.n_max(); ++n) {
    const double p = n * unit;
    terms.push_back(std::norm(spec.amplitudes()[static_cast<std::size_t>(n - 1)]) * p * p);
  }
  // <p> vanishes for box eigenstate superpositions in the standing-wave basis
  return std::sqrt(pairwise_sum(terms) / spec.captured_norm());
}

}  // namespace qcarpet
