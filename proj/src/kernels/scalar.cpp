#include <cmath>
#include <vector>

#include "qcarpet/kernels.hpp"
#include "qcarpet/numeric.hpp"

namespace qcarpet::kernels::scalar {

void exp_series(std::span<const std::complex<double>> coeffs, long first,
                std::span<const double> theta, std::span<std::complex<double>> out) {
  const std::size_t terms = coeffs.size();
  const std::size_t blocks = (terms + kSeriesBlock - 1) / kSeriesBlock;
  std::vector<complex> partial(blocks);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const double th = theta[j];
    const double step_re = std::cos(th);
    const double step_im = std::sin(th);
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t i0 = b * kSeriesBlock;
      const std::size_t i1 = std::min(terms, i0 + kSeriesBlock);
      const double phase = static_cast<double>(first + static_cast<long>(i0)) * th;
      double w_re = std::cos(phase);
      double w_im = std::sin(phase);
      double acc_re = 0.0;
      double acc_im = 0.0;
      for (std::size_t i = i0; i < i1; ++i) {
        const double c_re = coeffs[i].real();
        const double c_im = coeffs[i].imag();
        acc_re += c_re * w_re - c_im * w_im;
        acc_im += c_re * w_im + c_im * w_re;
        const double n_re = w_re * step_re - w_im * step_im;
        const double n_im = w_re * step_im + w_im * step_re;
        w_re = n_re;
        w_im = n_im;
      }
      partial[b] = complex(acc_re, acc_im);
    }
    out[j] = pairwise_sum(std::span<const complex>(partial));
  }
}

}  // namespace qcarpet::kernels::scalar
