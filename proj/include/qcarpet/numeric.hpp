#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qcarpet/error.hpp"

namespace qcarpet {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Pairwise (tree) summation. Rounding error grows as O(log n) instead of O(n).
template <class T>
T pairwise_sum(std::span<const T> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    T acc{};
    for (const T& v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const complex& v) { return std::abs(v); }

/// (-1)^n for any integer n.
constexpr double parity_sign(long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t min_panels = 2;
  std::size_t max_panels = std::size_t{1} << 20;
};

namespace detail {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// 16-point rule, computed once by Newton iteration on P_16.
const GaussLegendreRule& gauss_legendre_16();

template <class F>
auto composite_rule(F& f, double a, double b, std::size_t panels, double& l1)
    -> decltype(f(a)) {
  using R = decltype(f(a));
  const auto& rule = gauss_legendre_16();
  const double h = (b - a) / static_cast<double>(panels);
  std::vector<R> partial(panels);
  l1 = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    R acc{};
    double acc_abs = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const R v = f(mid + 0.5 * h * rule.nodes[i]);
      acc += rule.weights[i] * v;
      acc_abs += rule.weights[i] * magnitude(v);
    }
    partial[p] = acc * (0.5 * h);
    l1 += acc_abs * 0.5 * h;
  }
  return pairwise_sum(partial);
}

}  // namespace detail

/// Adaptive composite Gauss-Legendre on [a, b]: the panel count doubles until
/// two successive estimates agree to rel_tol (relative to max(|I|, ∫|f|)).
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opt = {})
    -> decltype(f(a)) {
  using R = decltype(f(a));
  if (!(b > a)) return R{};
  std::size_t panels = std::max<std::size_t>(opt.min_panels, 1);
  double l1 = 0.0;
  R previous = detail::composite_rule(f, a, b, panels, l1);
  while (panels < opt.max_panels) {
    panels *= 2;
    R current = detail::composite_rule(f, a, b, panels, l1);
    const double scale = std::max(magnitude(current), l1);
    if (magnitude(current - previous) <= opt.rel_tol * scale + opt.abs_tol) return current;
    previous = current;
  }
  throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "] within " + std::to_string(opt.max_panels) +
                        " panels");
}

/// Integrates piecewise over the sorted breakpoints inside (a, b).
template <class F>
auto integrate_pieces(F&& f, double a, double b, std::vector<double> breaks,
                      const QuadratureOptions& opt = {}) -> decltype(f(a)) {
  using R = decltype(f(a));
  std::vector<double> edges{a};
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks)
    if (x > edges.back() + 1e-15 * (b - a) && x < b - 1e-15 * (b - a)) edges.push_back(x);
  edges.push_back(b);
  std::vector<R> pieces;
  pieces.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    QuadratureOptions local = opt;
    // keep the initial panel width roughly the same on every piece
    const double frac = (edges[i + 1] - edges[i]) / (b - a);
    local.min_panels = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(frac * static_cast<double>(opt.min_panels))));
    pieces.push_back(integrate(f, edges[i], edges[i + 1], local));
  }
  return pairwise_sum(pieces);
}

/// Bessel function of the first kind, integer order. Miller downward recurrence
/// normalised with J0 + 2*sum J_2k = 1; power series for small arguments.
double bessel_j(int order, double x);

}  // namespace qcarpet
