// Compiled with -mavx2 -mfma; only entered after a runtime CPU check.

#include <cmath>
#include <vector>

#include "qcarpet/kernels.hpp"
#include "qcarpet/numeric.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define QCARPET_HAVE_AVX2_TU 1
#else
#define QCARPET_HAVE_AVX2_TU 0
#endif

namespace qcarpet::kernels::avx2 {

#if QCARPET_HAVE_AVX2_TU

void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out) {
  constexpr std::size_t kLanes = 4;
  const std::size_t terms = coeffs.size();
  const std::size_t blocks = (terms + kSeriesBlock - 1) / kSeriesBlock;
  const std::size_t full = theta.size() - theta.size() % kLanes;

  std::vector<double> part_re(blocks * kLanes);
  std::vector<double> part_im(blocks * kLanes);
  std::vector<complex> lane(blocks);
  alignas(32) double buf_a[kLanes];
  alignas(32) double buf_b[kLanes];

  for (std::size_t j = 0; j < full; j += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      buf_a[l] = std::cos(theta[j + l]);
      buf_b[l] = std::sin(theta[j + l]);
    }
    const __m256d step_re = _mm256_load_pd(buf_a);
    const __m256d step_im = _mm256_load_pd(buf_b);

    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t i0 = b * kSeriesBlock;
      const std::size_t i1 = std::min(terms, i0 + kSeriesBlock);
      const double index = static_cast<double>(first + static_cast<long>(i0));
      for (std::size_t l = 0; l < kLanes; ++l) {
        const double phase = index * theta[j + l];
        buf_a[l] = std::cos(phase);
        buf_b[l] = std::sin(phase);
      }
      __m256d w_re = _mm256_load_pd(buf_a);
      __m256d w_im = _mm256_load_pd(buf_b);
      __m256d acc_re = _mm256_setzero_pd();
      __m256d acc_im = _mm256_setzero_pd();
      for (std::size_t i = i0; i < i1; ++i) {
        const __m256d c_re = _mm256_set1_pd(coeffs[i].real());
        const __m256d c_im = _mm256_set1_pd(coeffs[i].imag());
        acc_re = _mm256_add_pd(acc_re, _mm256_fmsub_pd(c_re, w_re, _mm256_mul_pd(c_im, w_im)));
        acc_im = _mm256_add_pd(acc_im, _mm256_fmadd_pd(c_re, w_im, _mm256_mul_pd(c_im, w_re)));
        const __m256d n_re = _mm256_fmsub_pd(w_re, step_re, _mm256_mul_pd(w_im, step_im));
        const __m256d n_im = _mm256_fmadd_pd(w_re, step_im, _mm256_mul_pd(w_im, step_re));
        w_re = n_re;
        w_im = n_im;
      }
      _mm256_storeu_pd(&part_re[b * kLanes], acc_re);
      _mm256_storeu_pd(&part_im[b * kLanes], acc_im);
    }
    for (std::size_t l = 0; l < kLanes; ++l) {
      for (std::size_t b = 0; b < blocks; ++b)
        lane[b] = complex(part_re[b * kLanes + l], part_im[b * kLanes + l]);
      out[j + l] = pairwise_sum(std::span<const complex>(lane));
    }
  }
  if (full < theta.size())
    scalar::exp_series(coeffs, first, theta.subspan(full), out.subspan(full));
}

#else

void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out) {
  scalar::exp_series(coeffs, first, theta, out);
}

#endif

}  // namespace qcarpet::kernels::avx2
