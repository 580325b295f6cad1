#include "qcarpet/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/special_functions/fpclassify.hpp>  // pchip.hpp uses boost::math::isnan unqualified
#include <boost/math/interpolators/pchip.hpp>

#include "qcarpet/error.hpp"
#include "qcarpet/numeric.hpp"

namespace qcarpet {

namespace {

double checked_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be > 0");
  return v;
}

// (-pi, pi]
double reduce_angle(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

PotentialModel PotentialModel::harmonic(double mass, double omega) {
  checked_positive(mass, "mass");
  checked_positive(omega, "omega");
  PotentialModel pm;
  pm.name_ = "harmonic";
  pm.mass_ = mass;
  pm.potential_ = [mass, omega](double x) { return 0.5 * mass * omega * omega * x * x; };
  pm.exact_turning_ = [mass, omega](double e) {
    const double a = std::sqrt(2.0 * e / (mass * omega * omega));
    return TurningPoints{-a, a};
  };
  pm.symmetric_ = true;
  return pm;
}

PotentialModel PotentialModel::quartic(double coefficient, double mass) {
  checked_positive(coefficient, "quartic coefficient");
  checked_positive(mass, "mass");
  PotentialModel pm;
  pm.name_ = "quartic";
  pm.mass_ = mass;
  pm.potential_ = [coefficient](double x) { return coefficient * x * x * x * x; };
  pm.exact_turning_ = [coefficient](double e) {
    const double a = std::pow(e / coefficient, 0.25);
    return TurningPoints{-a, a};
  };
  pm.symmetric_ = true;
  return pm;
}

PotentialModel PotentialModel::power_law(double scale, double exponent, double mass) {
  checked_positive(scale, "power-law scale");
  checked_positive(exponent, "power-law exponent");
  checked_positive(mass, "mass");
  PotentialModel pm;
  pm.name_ = "power_law";
  pm.mass_ = mass;
  pm.potential_ = [scale, exponent](double x) { return std::pow(std::abs(x / scale), exponent); };
  pm.exact_turning_ = [scale, exponent](double e) {
    const double a = scale * std::pow(e, 1.0 / exponent);
    return TurningPoints{-a, a};
  };
  pm.symmetric_ = true;
  return pm;
}

PotentialModel PotentialModel::table(std::vector<double> xs, std::vector<double> us, double mass) {
  checked_positive(mass, "mass");
  if (xs.size() != us.size()) throw ValidationError("potential table columns differ in length");
  if (xs.size() < 4) throw ValidationError("potential table needs at least 4 samples");
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]) || !std::isfinite(us[i])) throw ValidationError("potential table has non-finite entries");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw ValidationError("potential table abscissae must increase strictly");
  const auto imin = static_cast<std::size_t>(std::min_element(us.begin(), us.end()) - us.begin());
  if (imin == 0 || imin + 1 == us.size())
    throw ValidationError("potential table minimum must be interior");
  for (std::size_t i = 1; i <= imin; ++i)
    if (!(us[i] < us[i - 1])) throw ValidationError("potential table must decrease before its minimum");
  for (std::size_t i = imin + 1; i < us.size(); ++i)
    if (!(us[i] > us[i - 1])) throw ValidationError("potential table must increase after its minimum");

  PotentialModel pm;
  pm.name_ = "table";
  pm.mass_ = mass;
  pm.domain_lo_ = xs.front();
  pm.domain_hi_ = xs.back();
  pm.x_min_ = xs[imin];
  pm.u_min_ = us[imin];
  bool symmetric = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::size_t j = xs.size() - 1 - i;
    if (std::abs((xs[i] - pm.x_min_) + (xs[j] - pm.x_min_)) > 1e-12 * (1.0 + std::abs(xs[i])) ||
        std::abs(us[i] - us[j]) > 1e-12 * (1.0 + std::abs(us[i])))
      symmetric = false;
  }
  pm.symmetric_ = symmetric;
  auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(xs),
                                                                                         std::move(us));
  pm.potential_ = [spline](double x) { return (*spline)(x); };
  return pm;
}

TurningPoints PotentialModel::turning_points(double energy) const {
  if (!(energy > u_min_)) throw BracketError("energy lies at or below the potential minimum");
  if (exact_turning_) return exact_turning_(energy);
  auto locate = [&](double direction, double limit) {
    double inner = x_min_;
    double step = 1e-3 * std::max(1.0, std::abs(limit - x_min_) < 1e300 ? std::abs(limit - x_min_) : 1.0);
    double outer = x_min_;
    for (;;) {
      outer = x_min_ + direction * step;
      if (direction * (outer - limit) >= 0.0) {
        outer = limit;
        if (potential_(outer) <= energy) throw BracketError("energy exceeds the tabulated potential range");
        break;
      }
      if (potential_(outer) > energy) break;
      inner = outer;
      step *= 2.0;
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (inner + outer);
      if (mid == inner || mid == outer) break;
      (potential_(mid) > energy ? outer : inner) = mid;
    }
    return 0.5 * (inner + outer);
  };
  return {locate(-1.0, domain_lo_), locate(1.0, domain_hi_)};
}

double PotentialModel::momentum(double energy, double x) const {
  const double d = energy - potential_(x);
  return d > 0.0 ? std::sqrt(2.0 * mass_ * d) : 0.0;
}

double PotentialModel::action(double energy) const {
  if (!(energy > u_min_)) return 0.0;
  const auto tp = turning_points(energy);
  const double c = 0.5 * (tp.left + tp.right), h = 0.5 * tp.width();
  auto rule = [&](int n) {
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      const double theta = i * kPi / (n + 1);
      terms[static_cast<std::size_t>(i - 1)] = std::sin(theta) * momentum(energy, c + h * std::cos(theta));
    }
    return 2.0 * h * kPi / (n + 1) * pairwise_sum(terms);
  };
  int n = 64;
  double previous = rule(n);
  while (n < (1 << 18)) {
    n = 2 * n + 1;  // nests the nodes
    const double current = rule(n);
    if (std::abs(current - previous) <= 1e-14 * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

double PotentialModel::period(double energy) const {
  const auto tp = turning_points(energy);
  const double c = 0.5 * (tp.left + tp.right), h = 0.5 * tp.width();
  auto rule = [&](int n) {
    std::vector<double> terms(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      const double theta = (2 * i - 1) * kPi / (2.0 * n);
      const double p = momentum(energy, c + h * std::cos(theta));
      terms[static_cast<std::size_t>(i - 1)] = p > 0.0 ? mass_ * std::sin(theta) / p : 0.0;
    }
    return 2.0 * h * kPi / n * pairwise_sum(terms);
  };
  int n = 64;
  double previous = rule(n);
  while (n < (1 << 18)) {
    n *= 3;  // nests the nodes
    const double current = rule(n);
    if (std::abs(current - previous) <= 1e-13 * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

double PotentialModel::partial_action(double energy, double x) const {
  const auto tp = turning_points(energy);
  if (x <= tp.left) return 0.0;
  const double upper = std::min(x, tp.right);
  const double wmax = std::sqrt(upper - tp.left);
  QuadratureOptions quad;
  quad.rel_tol = 1e-12;
  quad.min_panels = 8;
  return integrate([&](double w) { return 2.0 * w * momentum(energy, tp.left + w * w); }, 0.0, wmax, quad);
}

LevelTable::LevelTable(int n_lo, std::vector<double> energies) : n_lo_(n_lo), energies_(std::move(energies)) {}

double LevelTable::at(int n) const {
  if (n < n_lo_ || n > n_hi())
    throw ValidationError("level " + std::to_string(n) + " is outside the computed range [" +
                          std::to_string(n_lo_) + ", " + std::to_string(n_hi()) + "]");
  return energies_[static_cast<std::size_t>(n - n_lo_)];
}

LevelTable bohr_sommerfeld_levels(const PotentialModel& pm, int n_lo, int n_hi) {
  if (n_lo < 0 || n_hi < n_lo) throw ValidationError("level range must satisfy 0 <= n_lo <= n_hi");
  std::vector<double> energies;
  double lo = pm.minimum_value();
  for (int n = n_lo; n <= n_hi; ++n) {
    const double target = 2.0 * kPi * (n + 0.5);
    auto g = [&](double e) { return pm.action(e) - target; };
    double a = lo;
    double span = energies.empty() ? 1.0 : std::max(energies.back() - pm.minimum_value(), 1e-12);
    double b = a + span;
    double gb = g(b);
    for (int it = 0; gb < 0.0; ++it) {
      if (it > 200) throw BracketError("could not bracket the Bohr-Sommerfeld root");
      a = b;
      span *= 2.0;
      b = a + span;
      gb = g(b);
    }
    double ga = a == pm.minimum_value() ? -target : g(a);
    if (ga > 0.0) throw BracketError("action is not monotone in energy");
    // bisection down to a small bracket, then safeguarded secant
    for (int it = 0; it < 30; ++it) {
      const double m = 0.5 * (a + b);
      const double gm = g(m);
      if (gm < 0.0) {
        a = m;
        ga = gm;
      } else {
        b = m;
        gb = gm;
      }
    }
    double x = b;
    for (int it = 0; it < 60; ++it) {
      double s = b - gb * (b - a) / (gb - ga);
      if (!(s > a && s < b)) s = 0.5 * (a + b);
      const double gs = g(s);
      if (gs < 0.0) {
        a = s;
        ga = gs;
      } else {
        b = s;
        gb = gs;
      }
      x = s;
      if (gs == 0.0 || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) break;
      if (std::abs(gs) <= 1e-15 * target) break;
    }
    if (!energies.empty() && !(x > energies.back())) throw BracketError("levels are not increasing");
    energies.push_back(x);
    lo = x;
  }
  return LevelTable(n_lo, std::move(energies));
}

double wkb_eigenfunction(const PotentialModel& pm, const LevelTable& levels, int n, double x) {
  const double e = levels.at(n);
  const auto tp = pm.turning_points(e);
  const double buffer = kTurningBuffer * tp.width();
  if (x < tp.left + buffer || x > tp.right - buffer)
    throw TurningPointError("x is within the turning-point buffer of level " + std::to_string(n));
  const double p = pm.momentum(e, x);
  const double amplitude = 2.0 * std::sqrt(pm.mass() / (pm.period(e) * p));
  return amplitude * std::sin(pm.partial_action(e, x) + 0.25 * kPi);
}

double channel_velocity(const PotentialModel& pm, const LevelTable& levels, int n, int k, double x) {
  if (k == 0) return 0.0;
  const int m = n + std::abs(k);
  const double de = levels.at(m) - levels.at(n);
  const double denom = pm.momentum(levels.at(m), x) + pm.momentum(levels.at(n), x);
  return (k > 0 ? 1.0 : -1.0) * de / denom;
}

SemiclassicalChannel channel_trajectory(const PotentialModel& pm, const LevelTable& levels, int n, int k,
                                        double x0, double t0, double t_span, const OdeOptions& opt) {
  if (k == 0) throw ValidationError("channel order k must be nonzero");
  const auto inner = pm.turning_points(levels.at(n));
  pm.turning_points(levels.at(n + std::abs(k)));
  const double buffer = kTurningBuffer * inner.width();
  const double lo = inner.left + buffer, hi = inner.right - buffer;
  if (x0 < lo || x0 > hi) throw TurningPointError("x0 must lie inside both classical orbits");
  auto rhs = [&](double, double x) { return channel_velocity(pm, levels, n, k, x); };
  OdeResult r = integrate_ode(rhs, t0, x0, t_span, lo, hi, opt);
  SemiclassicalChannel ch;
  ch.n = n;
  ch.k = k;
  ch.t0 = t0;
  ch.x0 = x0;
  ch.t = std::move(r.t);
  ch.x = std::move(r.x);
  ch.exit_time = r.exit_time;
  return ch;
}

namespace {

double anchor_phase(const PotentialModel& pm, const LevelTable& levels, int n, int k, double x0) {
  const int m = n + std::abs(k);
  return pm.partial_action(levels.at(n), x0) + pm.partial_action(levels.at(m), x0) + 0.5 * kPi;
}

}  // namespace

double phase_anchor_residual(const PotentialModel& pm, const LevelTable& levels, int n, int k, double x0,
                             double t0) {
  const double de = levels.at(n + std::abs(k)) - levels.at(n);
  return reduce_angle(de * t0 - anchor_phase(pm, levels, n, k, x0));
}

double phase_anchor_residual_symmetric(const LevelTable& levels, int n, int k, double t0) {
  const int ak = std::abs(k);
  const double de = levels.at(n + ak) - levels.at(n);
  return reduce_angle(de * t0 - (n + 0.5 * ak + 1.0) * kPi);
}

std::vector<double> enumerate_anchors(const PotentialModel& pm, const LevelTable& levels, int n, int k,
                                      double x0, double t_lo, double t_hi) {
  if (t_hi < t_lo) throw ValidationError("anchor window must satisfy t_lo <= t_hi");
  const double de = levels.at(n + std::abs(k)) - levels.at(n);
  if (!(de > 0.0)) throw NumericError("level difference must be positive");
  const double base = anchor_phase(pm, levels, n, k, x0);
  const double step = 2.0 * kPi / de;
  const double first = std::ceil((t_lo * de - base) / (2.0 * kPi));
  std::vector<double> anchors;
  for (double j = first;; j += 1.0) {
    const double t = (base + 2.0 * kPi * j) / de;
    if (t > t_hi + 1e-12 * step) break;
    if (t >= t_lo - 1e-12 * step) anchors.push_back(t);
    if (anchors.size() > 100000) throw ValidationError("anchor window contains too many anchors");
  }
  return anchors;
}

SlopeRatioReport slope_ratio_check(const PotentialModel& pm, const LevelTable& levels, int n, int k,
                                   int k_prime, double x_meet) {
  if (k == 0 || k_prime == 0) throw ValidationError("channel orders must be nonzero");
  SlopeRatioReport r;
  const double sign = (k > 0) == (k_prime > 0) ? 1.0 : -1.0;
  const double de_k = levels.at(n + std::abs(k)) - levels.at(n);
  const double de_kp = levels.at(n + std::abs(k_prime)) - levels.at(n);
  r.ratio = sign * de_k / de_kp;
  r.expected = static_cast<double>(k) / k_prime;
  r.deviation = std::abs(r.ratio - r.expected);
  r.relative_deviation = r.deviation / std::abs(r.expected);
  r.trajectory_ratio =
      channel_velocity(pm, levels, n, k, x_meet) / channel_velocity(pm, levels, n, k_prime, x_meet);

  const int top = n + std::max(std::abs(k), std::abs(k_prime));
  double smin = 1e300, smax = 0.0, sum = 0.0;
  for (int m = n; m < top; ++m) {
    const double s = levels.at(m + 1) - levels.at(m);
    smin = std::min(smin, s);
    smax = std::max(smax, s);
    sum += s;
  }
  r.spacing_variation = (smax - smin) / (sum / (top - n));
  if (r.spacing_variation > kSpacingUniformity) {
    r.refused = true;
    r.warning = "level spacing varies by " + std::to_string(100.0 * r.spacing_variation) +
                "% across the band; the constant-spacing slope ratio does not apply";
  }
  return r;
}

}  // namespace qcarpet
