#include "qcarpet/numeric.hpp"

#include <cmath>
#include <cstdlib>

namespace qcarpet {
namespace detail {

const GaussLegendreRule& gauss_legendre_16() {
  static const GaussLegendreRule rule = [] {
    constexpr int n = 16;
    GaussLegendreRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

}  // namespace detail

namespace {

double bessel_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int i = 1; i <= n; ++i) term *= half / i;
  double sum = term;
  const double q = half * half;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

double bessel_miller(int n, double x) {
  const double top = std::max<double>(n, x);
  int start = static_cast<int>(top + 30.0 + 10.0 * std::sqrt(top));
  start += start % 2;
  double next = 0.0;  // j_{k+1}
  double cur = 1.0;   // j_k
  double sum = 0.0;
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / x) * cur - next;  // j_{k-1}
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      sum *= 1e-250;
      wanted *= 1e-250;
    }
    const int idx = k - 1;
    if (idx == n) wanted = cur;
    if (idx > 0 && idx % 2 == 0) sum += 2.0 * cur;
  }
  sum += cur;  // j_0
  return wanted / sum;
}

}  // namespace

double bessel_j(int order, double x) {
  double sign = 1.0;
  if (order < 0) {
    order = -order;
    if (order % 2) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (order % 2) sign = -sign;
  }
  if (x == 0.0) return order == 0 ? sign : 0.0;
  if (x < 1.0) return sign * bessel_series(order, x);
  return sign * bessel_miller(order, x);
}

}  // namespace qcarpet
