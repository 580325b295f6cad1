#include <atomic>
#include <cstdlib>
#include <string>

#include "qcarpet/error.hpp"
#include "qcarpet/kernels.hpp"

namespace qcarpet::kernels {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return has;
#else
  return false;
#endif
}

Isa detect() {
  // QCARPET_ISA=scalar forces the reference path (useful when bisecting).
  if (const char* env = std::getenv("QCARPET_ISA"); env && std::string(env) == "scalar")
    return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int> g_forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa detected = detect();
  return detected;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa))
    throw ValidationError("ISA " + std::string(isa_name(*isa)) + " is not available on this CPU");
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void exp_series(Isa isa, std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out) {
  if (out.size() < theta.size()) throw ValidationError("exp_series: output span too small");
  if (isa == Isa::avx2 && isa_available(Isa::avx2))
    avx2::exp_series(coeffs, first, theta, out);
  else
    scalar::exp_series(coeffs, first, theta, out);
}

void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out) {
  exp_series(active_isa(), coeffs, first, theta, out);
}

}  // namespace qcarpet::kernels
