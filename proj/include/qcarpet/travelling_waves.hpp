#pragma once

// Travelling-wave decomposition of the box carpet:
//
//   P(x, t) = L^-1 [ 1 + sum_k S_k((x - k V t) / L) ]
//   S_k(z)  = 1/2 sum_m psi*_m psi_{k-m} exp(-i (2m - k) pi z) - 1/2 |psi_{k/2}|^2
//
// with the signed extension psi_{-n} = -psi_n. The mean of P along x0 + kVt is
// L^-1 [1 + S_k(x0/L)] for integer k and L^-1 otherwise. The constant 1 is the
// norm sum |psi_n|^2; for truncated spectra the captured norm is used in its
// place so that every identity stays exact.

#include <optional>
#include <vector>

#include "qcarpet/spectrum.hpp"

namespace qcarpet {

inline constexpr std::size_t kDefaultZSamples = 4096;
inline constexpr double kStructureThreshold = 1e-6;

struct StructureValue {
  double value = 0.0;
  // |Im| of the raw complex sum before it is discarded
  double imag_residual = 0.0;
};

StructureValue structure_function_detailed(const EnergySpectrum& spec, int k, double z);
double structure_function(const EnergySpectrum& spec, int k, double z);

/// S_k sampled at z_j = j / samples, j = 0..samples-1.
struct StructureFunctionTable {
  int k = 0;
  std::vector<double> z;
  std::vector<double> s;
  double max_imag_residual = 0.0;
  WavefunctionTag closed_form = CustomTag{};

  std::size_t size() const { return s.size(); }
  /// Sample with the wrap rule S_k(z + 1) = (-1)^k S_k(z) applied to any index.
  double at(long j) const;
};

StructureFunctionTable tabulate_structure(const EnergySpectrum& spec, int k,
                                          std::size_t samples = kDefaultZSamples);

double trajectory_average(const EnergySpectrum& spec, int k, double x0);

/// Mean density along a line whose slope is not an integer multiple of V.
double trajectory_average_noninteger(const EnergySpectrum& spec);

/// L^-1 [1 + sum_{|k| <= k_max} S_k((x - kVt)/L)].
double reconstruct_density(const EnergySpectrum& spec, int k_max, double x, double t);

/// Truncated reconstruction for a whole row of x values (series kernels).
std::vector<double> reconstruct_row(const EnergySpectrum& spec, int k_max, double t,
                                    std::span<const double> xs);

enum class StructureKind { channel, ridge };

std::string_view kind_name(StructureKind kind);

struct LinearStructure {
  StructureKind kind;
  int k = 0;
  double x0 = 0.0;              // axis crossing in [0, L)
  double depth_or_height = 0.0; // S_k(x0/L); mean density is (1 + this)/L
  std::optional<double> width_horizontal;
  std::optional<double> width_perpendicular;
  std::optional<double> left_zero;   // x_-
  std::optional<double> right_zero;  // x_+
};

/// Grid scan for local extrema plus 3-point parabolic refinement. Extrema with
/// |S_k| below the threshold are dropped; minima must be negative (channel) and
/// maxima positive (ridge).
std::vector<LinearStructure> find_linear_structures(const StructureFunctionTable& table,
                                                    const BoxConfig& config,
                                                    double threshold = kStructureThreshold);

/// Mean density along kVt + lL from the amplitude form
/// L^-1 Re{1 - sum psi*_m psi_{m+|k|} + 1/2 sum_{m != |k|/2}^{|k|-1} psi*_m psi_{|k|-m}}.
/// Throws ParityError when kl is odd.
double trajectory_average_exact_ampform(const EnergySpectrum& spec, int k, int l);

/// The third (low-index) sum of the amplitude form, real part.
double ampform_low_index_sum(const EnergySpectrum& spec, int k);

}  // namespace qcarpet
