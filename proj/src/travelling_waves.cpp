#include "qcarpet/travelling_waves.hpp"

#include <cmath>

#include "qcarpet/error.hpp"
#include "qcarpet/kernels.hpp"

namespace qcarpet {

namespace {

// Coefficients a_m = psi*_m psi_{k-m} over the m range where both are populated.
struct PairCoefficients {
  long first = 0;
  std::vector<complex> a;
};

PairCoefficients pair_coefficients(const EnergySpectrum& spec, int k) {
  const long N = spec.n_max();
  const long lo = std::max(-N, static_cast<long>(k) - N);
  const long hi = std::min(N, static_cast<long>(k) + N);
  PairCoefficients pc;
  pc.first = lo;
  if (hi < lo) return pc;
  pc.a.resize(static_cast<std::size_t>(hi - lo + 1));
  for (long m = lo; m <= hi; ++m)
    pc.a[static_cast<std::size_t>(m - lo)] =
        std::conj(extended_amplitude(spec, m)) * extended_amplitude(spec, k - m);
  return pc;
}

double half_index_weight(const EnergySpectrum& spec, int k) {
  if (k % 2 != 0) return 0.0;
  return std::norm(extended_amplitude(spec, k / 2));
}

}  // namespace

StructureValue structure_function_detailed(const EnergySpectrum& spec, int k, double z) {
  if (std::abs(k) > 2 * spec.n_max()) return {};
  // reduce z into [0, 1) with S_k(z + 1) = (-1)^k S_k(z)
  const double shift = std::floor(z);
  const double zr = z - shift;
  const double sign = parity_sign(k) == 1.0 ? 1.0 : parity_sign(static_cast<long>(shift));
  const auto pc = pair_coefficients(spec, k);
  std::vector<complex> terms(pc.a.size());
  for (std::size_t i = 0; i < pc.a.size(); ++i) {
    const long m = pc.first + static_cast<long>(i);
    terms[i] = pc.a[i] * std::polar(1.0, -static_cast<double>(2 * m - k) * kPi * zr);
  }
  const complex sum = 0.5 * pairwise_sum(terms);
  StructureValue out;
  out.value = sign * (sum.real() - 0.5 * half_index_weight(spec, k));
  out.imag_residual = std::abs(sum.imag());
  return out;
}

double structure_function(const EnergySpectrum& spec, int k, double z) {
  return structure_function_detailed(spec, k, z).value;
}

double StructureFunctionTable::at(long j) const {
  const long n = static_cast<long>(s.size());
  long wraps = 0;
  if (j < 0) {
    wraps = (-j + n - 1) / n;
    j += wraps * n;
  } else if (j >= n) {
    wraps = j / n;
    j -= wraps * n;
  }
  const double v = s[static_cast<std::size_t>(j)];
  return (k % 2 != 0 && wraps % 2 != 0) ? -v : v;
}

StructureFunctionTable tabulate_structure(const EnergySpectrum& spec, int k, std::size_t samples) {
  if (samples < 3) throw ValidationError("structure table needs at least 3 samples");
  StructureFunctionTable table;
  table.k = k;
  table.closed_form = spec.tag();
  table.z.resize(samples);
  table.s.assign(samples, 0.0);
  for (std::size_t j = 0; j < samples; ++j) table.z[j] = static_cast<double>(j) / static_cast<double>(samples);
  if (std::abs(k) > 2 * spec.n_max()) return table;

  const auto pc = pair_coefficients(spec, k);
  std::vector<double> theta(samples);
  for (std::size_t j = 0; j < samples; ++j) theta[j] = -2.0 * kPi * table.z[j];
  std::vector<complex> sums(samples);
  kernels::exp_series(pc.a, pc.first, theta, sums);
  const double half = 0.5 * half_index_weight(spec, k);
  for (std::size_t j = 0; j < samples; ++j) {
    const complex v = 0.5 * sums[j] * std::polar(1.0, k * kPi * table.z[j]);
    table.s[j] = v.real() - half;
    table.max_imag_residual = std::max(table.max_imag_residual, std::abs(v.imag()));
  }
  return table;
}

double trajectory_average(const EnergySpectrum& spec, int k, double x0) {
  const double L = spec.config().length;
  return (spec.captured_norm() + structure_function(spec, k, x0 / L)) / L;
}

double trajectory_average_noninteger(const EnergySpectrum& spec) {
  return spec.captured_norm() / spec.config().length;
}

double reconstruct_density(const EnergySpectrum& spec, int k_max, double x, double t) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  const double L = spec.config().length;
  const double V = spec.config().speed;
  const int top = std::min(k_max, 2 * spec.n_max());
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(2 * top + 2));
  terms.push_back(spec.captured_norm());
  for (int k = -top; k <= top; ++k) terms.push_back(structure_function(spec, k, (x - k * V * t) / L));
  return pairwise_sum(terms) / L;
}

std::vector<double> reconstruct_row(const EnergySpectrum& spec, int k_max, double t,
                                    std::span<const double> xs) {
  if (k_max < 0) throw ValidationError("k_max must be >= 0");
  const double L = spec.config().length;
  const double V = spec.config().speed;
  const int top = std::min(k_max, 2 * spec.n_max());
  std::vector<double> theta(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) theta[j] = -2.0 * kPi * xs[j] / L;
  std::vector<std::vector<double>> per_k;
  std::vector<complex> sums(xs.size());
  for (int k = -top; k <= top; ++k) {
    // S_k((x - kVt)/L) = 1/2 Re{ exp(i k pi u) sum_m a_m exp(-2 i m pi u) } - |psi_{k/2}|^2/2,
    // u = (x - kVt)/L. The shift by kVt/L moves into the coefficients.
    const auto pc = pair_coefficients(spec, k);
    const double shift = std::fmod(k * V * t / L, 2.0);
    std::vector<complex> c(pc.a.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const long m = pc.first + static_cast<long>(i);
      c[i] = pc.a[i] * std::polar(1.0, static_cast<double>(2 * m - k) * kPi * shift);
    }
    kernels::exp_series(c, pc.first, theta, sums);
    const double half = 0.5 * half_index_weight(spec, k);
    std::vector<double> row(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const complex phase = std::polar(1.0, k * kPi * xs[j] / L);
      row[j] = 0.5 * (sums[j] * phase).real() - half;
    }
    per_k.push_back(std::move(row));
  }
  std::vector<double> out(xs.size());
  std::vector<double> terms(per_k.size() + 1);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    terms[0] = spec.captured_norm();
    for (std::size_t q = 0; q < per_k.size(); ++q) terms[q + 1] = per_k[q][j];
    out[j] = pairwise_sum(terms) / L;
  }
  return out;
}

std::string_view kind_name(StructureKind kind) { return kind == StructureKind::channel ? "channel" : "ridge"; }

namespace {

// Linear interpolation of the zero between samples j and j + dir.
double zero_between(const StructureFunctionTable& t, long j, int dir) {
  const double a = t.at(j);
  const double b = t.at(j + dir);
  const double frac = a / (a - b);
  return (static_cast<double>(j) + dir * frac) / static_cast<double>(t.size());
}

std::optional<double> scan_zero(const StructureFunctionTable& t, long j0, int dir, bool is_min) {
  const long n = static_cast<long>(t.size());
  for (long step = 0; step < n; ++step) {
    const long j = j0 + dir * step;
    const double here = t.at(j);
    const double next = t.at(j + dir);
    if (is_min ? next >= 0.0 : next <= 0.0) {
      if (here == next) return static_cast<double>(j + dir) / static_cast<double>(n);
      return zero_between(t, j, dir);
    }
    // reached the opposite extremum before crossing zero
    const double after = t.at(j + 2 * dir);
    if (is_min ? (next > here && next >= after) : (next < here && next <= after)) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::vector<LinearStructure> find_linear_structures(const StructureFunctionTable& table,
                                                    const BoxConfig& config, double threshold) {
  std::vector<LinearStructure> found;
  const long n = static_cast<long>(table.size());
  const double L = config.length;
  for (long j = 0; j < n; ++j) {
    const double left = table.at(j - 1);
    const double mid = table.at(j);
    const double right = table.at(j + 1);
    const bool is_min = mid < left && mid <= right;
    const bool is_max = mid > left && mid >= right;
    if (!is_min && !is_max) continue;
    if (std::abs(mid) < threshold) continue;
    if (is_min && mid >= 0.0) continue;
    if (is_max && mid <= 0.0) continue;

    double offset = 0.0;
    double value = mid;
    const double curvature = left - 2.0 * mid + right;
    if (curvature != 0.0) {
      offset = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
      value = mid - 0.25 * (left - right) * offset;
    }
    double z0 = (static_cast<double>(j) + offset) / static_cast<double>(n);
    double sign = 1.0;
    if (z0 < 0.0) {
      z0 += 1.0;
      sign = parity_sign(table.k);
    } else if (z0 >= 1.0) {
      z0 -= 1.0;
      sign = parity_sign(table.k);
    }
    value *= sign;
    LinearStructure st;
    // a wrapped odd-k extremum changes type; keep the classification of the value
    st.kind = value < 0.0 ? StructureKind::channel : StructureKind::ridge;
    st.k = table.k;
    st.x0 = z0 * L;
    st.depth_or_height = value;
    const auto zl = scan_zero(table, j, -1, is_min);
    const auto zr = scan_zero(table, j, +1, is_min);
    if (zl && zr) {
      st.left_zero = *zl * L;
      st.right_zero = *zr * L;
      st.width_horizontal = (*zr - *zl) * L;
      const double kv = table.k * config.speed;
      st.width_perpendicular = *st.width_horizontal / std::sqrt(1.0 + kv * kv);
    }
    found.push_back(st);
  }
  return found;
}

double ampform_low_index_sum(const EnergySpectrum& spec, int k) {
  const long ak = std::abs(k);
  std::vector<complex> terms;
  for (long m = 1; m <= ak - 1; ++m) {
    if (2 * m == ak) continue;
    terms.push_back(std::conj(extended_amplitude(spec, m)) * extended_amplitude(spec, ak - m));
  }
  return 0.5 * pairwise_sum(terms).real();
}

double trajectory_average_exact_ampform(const EnergySpectrum& spec, int k, int l) {
  if ((static_cast<long>(k) * l) % 2 != 0)
    throw ParityError("amplitude form needs k*l even (k = " + std::to_string(k) + ", l = " +
                      std::to_string(l) + ")");
  const long ak = std::abs(k);
  std::vector<complex> neighbours;
  for (long m = 1; m + ak <= spec.n_max(); ++m)
    neighbours.push_back(std::conj(extended_amplitude(spec, m)) * extended_amplitude(spec, m + ak));
  const double value = spec.captured_norm() - pairwise_sum(neighbours).real() + ampform_low_index_sum(spec, k);
  return value / spec.config().length;
}

}  // namespace qcarpet
