#pragma once

// Dormand-Prince 5(4) for a scalar autonomous-in-form ODE dx/dt = f(t, x).

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "qcarpet/error.hpp"

namespace qcarpet {

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 0.0;  // 0: unlimited
  // integrate with this constant step instead of adapting (for convergence studies)
  std::optional<double> fixed_step;
  std::size_t max_steps = 1000000;
};

struct OdeResult {
  std::vector<double> t;
  std::vector<double> x;
  // set when the solution reached the boundary of the admissible domain
  std::optional<double> exit_time;
};

namespace detail {

struct DopriStep {
  double x5 = 0.0;
  double err = 0.0;
};

template <class F>
DopriStep dopri_step(F& f, double t, double x, double h) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  const double k1 = f(t, x);
  const double k2 = f(t + c2 * h, x + h * a21 * k1);
  const double k3 = f(t + c3 * h, x + h * (a31 * k1 + a32 * k2));
  const double k4 = f(t + c4 * h, x + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const double k5 = f(t + c5 * h, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const double k6 = f(t + h, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const double x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const double k7 = f(t + h, x5);
  const double err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return {x5, err};
}

}  // namespace detail

/// Integrates from (t0, x0) to t0 + span (span may be negative), stopping early
/// when x leaves [lo, hi]; the exit time is then located by bisection on the
/// last step and reported.
template <class F>
OdeResult integrate_ode(F f, double t0, double x0, double span, double lo, double hi,
                        const OdeOptions& opt = {}) {
  OdeResult out;
  out.t.push_back(t0);
  out.x.push_back(x0);
  if (span == 0.0) return out;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  const double t_end = t0 + span;
  double t = t0, x = x0;
  double h = opt.fixed_step ? *opt.fixed_step : std::min(opt.initial_step, std::abs(span));
  if (!(h > 0.0)) throw ValidationError("ODE step must be > 0");
  auto inside = [&](double v) { return v >= lo && v <= hi; };
  for (std::size_t steps = 0; steps < opt.max_steps; ++steps) {
    if (dir * (t_end - t) <= 0.0) return out;
    double step = std::min(h, std::abs(t_end - t));
    if (opt.max_step > 0.0) step = std::min(step, opt.max_step);
    const auto trial = detail::dopri_step(f, t, x, dir * step);
    const double scale = opt.abs_tol + opt.rel_tol * std::max(std::abs(x), std::abs(trial.x5));
    const double ratio = std::abs(trial.err) / scale;
    if (!opt.fixed_step && ratio > 1.0) {
      h = step * std::max(0.2, 0.9 * std::pow(ratio, -0.2));
      continue;
    }
    if (!inside(trial.x5)) {
      // shrink the step until the boundary is bracketed to rounding
      double a = 0.0, b = step;
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(t)); ++it) {
        const double mid = 0.5 * (a + b);
        if (inside(detail::dopri_step(f, t, x, dir * mid).x5))
          a = mid;
        else
          b = mid;
      }
      if (a > 0.0) {
        out.t.push_back(t + dir * a);
        out.x.push_back(detail::dopri_step(f, t, x, dir * a).x5);
      }
      out.exit_time = t + dir * b;
      return out;
    }
    t += dir * step;
    x = trial.x5;
    out.t.push_back(t);
    out.x.push_back(x);
    if (!opt.fixed_step) h = step * std::min(5.0, 0.9 * std::pow(std::max(ratio, 1e-10), -0.2));
  }
  throw NumericError("ODE integration exceeded the step limit");
}

}  // namespace qcarpet
