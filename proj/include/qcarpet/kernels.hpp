#pragma once

// Trigonometric series kernels.
//
// Every grid-shaped evaluation in the library (carpet rows, structure-function
// tables, grating fields) reduces to
//
//     out[j] = sum_i coeffs[i] * exp(1i * (first + i) * theta[j])
//
// The scalar variant is the reference. The AVX2 variant evaluates four theta
// lanes at once with the same block recurrence and the same reduction order,
// and is chosen at runtime when the CPU supports AVX2 and FMA.

#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace qcarpet::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// ISA used by the dispatching entry points.
Isa active_isa();

/// Pins dispatch to a given ISA (std::nullopt restores auto-detection).
/// Throws ValidationError when the ISA is not available on this CPU.
void force_isa(std::optional<Isa> isa);

// Terms per reseed block. The rotation recurrence is restarted from an exact
// sincos at each block boundary; block partials are combined pairwise.
inline constexpr std::size_t kSeriesBlock = 32;

void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out);

void exp_series(Isa isa, std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out);

namespace scalar {
void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out);
}

namespace avx2 {
// Only callable when isa_available(Isa::avx2).
void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out);
}

}  // namespace qcarpet::kernels
