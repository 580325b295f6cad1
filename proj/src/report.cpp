#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "qcarpet/analytic.hpp"
#include "qcarpet/error.hpp"
#include "qcarpet/oracle.hpp"
#include "qcarpet/scenario.hpp"
#include "qcarpet/wigner.hpp"

namespace qcarpet {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool ScenarioReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

void write_structure_csv(const StructureFunctionTable& table, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "z,S_k\n";
  for (std::size_t i = 0; i < table.size(); ++i) f << format_double(table.z[i]) << ',' << format_double(table.s[i]) << '\n';
  if (!f) throw IoError("failed writing " + path.string());
}

void write_checks_csv(const std::vector<CheckResult>& checks, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << "check,value,reference,residual,tolerance,pass,note\n";
  for (const auto& c : checks)
    f << c.name << ',' << format_double(c.value) << ',' << format_double(c.reference) << ','
      << format_double(c.residual) << ',' << format_double(c.tolerance) << ',' << (c.passed ? "yes" : "no") << ','
      << c.note << '\n';
  if (!f) throw IoError("failed writing " + path.string());
}

namespace {

CheckResult residual_check(std::string name, double value, double reference, double tolerance, std::string note = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.reference = reference;
  c.residual = std::abs(value - reference);
  c.tolerance = tolerance;
  c.passed = c.residual <= tolerance;
  c.note = std::move(note);
  return c;
}

// max-residual accumulator; the reported value/reference pair is the worst one
struct Worst {
  double value = 0.0, reference = 0.0, residual = -1.0;
  void add(double v, double r) {
    const double d = std::abs(v - r);
    if (d > residual) {
      residual = d;
      value = v;
      reference = r;
    }
  }
  CheckResult check(std::string name, double tolerance, std::string note = {}) const {
    CheckResult c = residual_check(std::move(name), value, reference, tolerance, std::move(note));
    c.residual = std::max(residual, 0.0);
    c.passed = c.residual <= tolerance;
    return c;
  }
};

// deterministic sample positions in (0, 1)
double unit_point(int i) { return std::fmod(0.1234567 + 0.6180339887498949 * (i + 1), 1.0); }

double norm_defect_bound(const EnergySpectrum& spec, const Tolerances& tol) {
  if (std::holds_alternative<UniformTag>(spec.tag())) return 4.0 / (kPi * kPi * spec.n_max());
  if (std::holds_alternative<GaussianTag>(spec.tag())) return kCapturedNormWarning;
  return tol.norm;
}

// Exact bound on |S_k(truncated) - S_k(uniform)|: half the sum of the omitted
// products |psi_m psi_{k-m}| (both odd, at least one index beyond n_max).
double uniform_truncation_bound(int n_max, int k) {
  if (k % 2 != 0) return 0.0;
  auto amp = [](long n) { return (n % 2 != 0) ? 2.0 * std::sqrt(2.0) / (kPi * std::abs(static_cast<double>(n))) : 0.0; };
  const long reach = n_max + 200000;
  double total = 0.0;
  for (long m = -reach; m <= reach; ++m) {
    const long other = k - m;
    if (std::abs(m) <= n_max && std::abs(other) <= n_max) continue;
    total += amp(m) * amp(other);
  }
  // |m| > reach: products below 8/(pi^2 m (m - |k|)); both tails together
  total += 2.0 * 8.0 / (kPi * kPi * static_cast<double>(reach - std::abs(k)));
  return 0.5 * total;
}

std::vector<CheckResult> box_checks(const ScenarioConfig& c, const EnergySpectrum& spec,
                                    const std::vector<StructureFunctionTable>& tables) {
  const Tolerances& tol = c.tolerances;
  const double L = spec.config().length;
  const double T = spec.config().revival_period();
  const int N = spec.n_max();
  std::vector<CheckResult> out;

  out.push_back(residual_check("normalization", spec.captured_norm(), 1.0, norm_defect_bound(spec, tol),
                               "captured norm against 1 (truncation allowance for analytic states)"));

  {
    QuadratureOptions q;
    q.min_panels = static_cast<std::size_t>(N) + 4;
    Worst w;
    for (double frac : {0.0, 0.37, 0.81}) {
      const double t = frac * T;
      w.add(integrate([&](double x) { return probability_density(spec, x, t); }, 0.0, L, q), spec.captured_norm());
    }
    out.push_back(w.check("parseval", 1e-9, "int P dx against sum |psi_n|^2 at three times"));
  }
  {
    Worst per, sine;
    double boundary = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double x = unit_point(i) * L, t = unit_point(i + 50) * T;
      per.add(probability_density(spec, x, t + T), probability_density(spec, x, t));
      sine.add(std::abs(evaluate_wavefunction(spec, x, t) - evaluate_sine_series(spec, x, t)), 0.0);
      boundary = std::max({boundary, probability_density(spec, 0.0, t), probability_density(spec, L, t)});
    }
    out.push_back(per.check("revival_periodicity", 1e-12));
    out.push_back(sine.check("sine_vs_exponential_series", 1e-12));
    out.push_back(residual_check("boundary_density", boundary, 0.0, 1e-20 * N * N));
  }
  {
    Worst w;
    const int top = std::min(c.k_max, 8);
    for (int k = -top; k <= top; ++k)
      for (int i = 0; i < 4; ++i) {
        const double x0 = unit_point(i + 7 * k + 100) * L;
        w.add(trajectory_average_oracle(spec, k, x0, minimum_oracle_samples(spec, Slope{k, 1})),
              trajectory_average(spec, k, x0));
      }
    out.push_back(w.check("trajectory_average_oracle", tol.oracle, "brute-force time average over one revival"));
    Worst nonint;
    for (int i = 0; i < 3; ++i) {
      const double x0 = unit_point(i + 300) * L;
      const Slope s{3, 2};
      nonint.add(trajectory_average_oracle(spec, s, x0, minimum_oracle_samples(spec, s)),
                 trajectory_average_noninteger(spec));
    }
    out.push_back(nonint.check("noninteger_slope_average", tol.oracle, "slope 1.5 V"));
  }
  {
    Worst w;
    for (int i = 0; i < 10; ++i) {
      const double x = unit_point(i + 400) * L, t = unit_point(i + 500) * T;
      w.add(reconstruct_density(spec, 2 * N, x, t), probability_density(spec, x, t));
    }
    out.push_back(w.check("reconstruction_completeness", tol.completeness));
  }
  {
    Worst parity, reflect;
    double imag = 0.0, lowest = 1e300;
    for (const auto& tab : tables) {
      imag = std::max(imag, tab.max_imag_residual);
      for (double s : tab.s) lowest = std::min(lowest, spec.captured_norm() + s);
      for (int i = 0; i < 8; ++i) {
        const double z = unit_point(i + 600) * 3.0 - 1.5;
        parity.add(structure_function(spec, tab.k, z + 1.0), parity_sign(tab.k) * structure_function(spec, tab.k, z));
        reflect.add(structure_function(spec, -tab.k, z), structure_function(spec, tab.k, -z));
      }
    }
    out.push_back(parity.check("structure_shift_parity", 1e-12));
    out.push_back(reflect.check("structure_reflection", 1e-12));
    out.push_back(residual_check("structure_reality", imag, 0.0, 1e-12, "largest imaginary residual"));
    CheckResult nn = residual_check("average_nonnegativity", lowest, 0.0, 0.0, "min of norm + S_k over tables");
    nn.passed = lowest >= -1e-10;
    nn.residual = std::max(0.0, -lowest);
    nn.tolerance = 1e-10;
    out.push_back(nn);
  }
  if (c.identity_points > 0) {
    Worst remark, wigpsi;
    const auto phi = AntisymmetricExtension::from_spectrum(spec);
    const auto psi = initial_from_spectrum(spec);
    for (int i = 0; i < c.identity_points; ++i) {
      const int k = static_cast<int>(std::lround(unit_point(i + 700) * 2 * c.k_max)) - c.k_max;
      const double x = unit_point(i + 800) * L;
      const double s = structure_function(spec, k, x / L);
      remark.add(structure_from_wigner(phi, spec, k, x), s);
      wigpsi.add(structure_wigpsi(psi, spec, k, x), s);
    }
    out.push_back(remark.check("wigner_extension_identity", tol.identity));
    out.push_back(wigpsi.check("wigner_psi_identity", tol.identity));
  }
  {
    Worst bridge, pav;
    for (int k : {-2, -1, 1, 2})
      for (int l : {0, 1, 2}) {
        if ((k * l) % 2 != 0) continue;
        bridge.add(trajectory_average_exact_ampform(spec, k, l), trajectory_average(spec, k, std::fmod(l * L, L)));
      }
    for (int k : {-1, 1}) pav.add(depth_estimate(spec, k), trajectory_average_exact_ampform(spec, k, 0));
    out.push_back(bridge.check("amplitude_form_bridge", tol.exactness, "|k| in {1, 2}"));
    out.push_back(pav.check("depth_estimate_exact_k1", tol.exactness));
  }

  if (std::holds_alternative<UniformTag>(spec.tag())) {
    double worst_ratio = 0.0;
    Worst w;
    for (int k = -c.k_max; k <= c.k_max; ++k) {
      const double bound = uniform_truncation_bound(N, k) + 1e-13;
      for (int i = 0; i < 16; ++i) {
        const double z = unit_point(i + 900);
        const double d = std::abs(structure_function(spec, k, z) - analytic::uniform_structure_closed(k, z));
        if (d / bound > worst_ratio) {
          worst_ratio = d / bound;
          w = Worst{};
          w.add(structure_function(spec, k, z), analytic::uniform_structure_closed(k, z));
        }
      }
    }
    CheckResult r = w.check("uniform_closed_form", 1.0, "residual / exact truncation bound");
    r.residual = worst_ratio;
    r.passed = worst_ratio <= 1.0;
    out.push_back(r);
  }
  if (const auto* g = std::get_if<GaussianTag>(&spec.tag())) {
    if (analytic::gaussian_well_localized(g->center, g->width, spec.config())) {
      Worst w;
      for (int i = 0; i <= 30; ++i) {
        const double z = 0.05 + 0.9 * i / 30.0;
        w.add(structure_function(spec, 1, z),
              analytic::gaussian_structure_closed(g->center, g->width, g->momentum, 1, z * L, spec.config()));
      }
      out.push_back(w.check("gaussian_closed_form_k1", tol.gaussian_closed_form, "z in [0.05, 0.95]"));
    }
  }
  if (const auto* st = std::get_if<SteppedTag>(&spec.tag())) {
    if (st->period == 3 && st->offset == 1) {
      const double expected = -(st->count - 1.0) / (2.0 * st->count);
      out.push_back(residual_check("stepped_channel_value", structure_function(spec, -3, 1.0 / 3.0), expected, 1e-6,
                                   "S_-3(1/3) = -(N-1)/(2N)"));
    }
  }
  return out;
}

std::vector<CheckResult> periodic_checks(const ScenarioConfig& c, const PeriodicSpectrum& ps) {
  const Tolerances& tol = c.tolerances;
  const double L = ps.length();
  std::vector<CheckResult> out;
  {
    QuadratureOptions q;
    q.min_panels = 2 * static_cast<std::size_t>(ps.n_max()) + 4;
    const double total = integrate([&](double x) { return intensity(ps, x, 0.37); }, 0.0, 2.0 * L, q);
    out.push_back(residual_check("parseval", total, ps.intensity(), 1e-9 * std::max(1.0, ps.intensity())));
  }
  {
    Worst talbot, period;
    for (int i = 0; i < 8; ++i) {
      const double x = unit_point(i) * 2.0 * L, z = unit_point(i + 20) * ps.talbot_period();
      talbot.add(std::abs(periodic_field(ps, x, z + 2.0 * ps.talbot_period()) - periodic_field(ps, x, z)), 0.0);
      period.add(std::abs(periodic_field(ps, x + 2.0 * L, z) - periodic_field(ps, x, z)), 0.0);
    }
    out.push_back(talbot.check("talbot_field_revival", 1e-12, "z + 4L/V"));
    out.push_back(period.check("field_periodicity", 1e-12, "x + 2L"));
  }
  {
    Worst w;
    const int top = std::min(c.k_max, 8);
    for (int k = -top; k <= top; ++k)
      for (int i = 0; i < 4; ++i) {
        const double x0 = unit_point(i + 5 * k + 40) * 2.0 * L;
        const Slope s{k, 1};
        w.add(lane_contrast_oracle(ps, s, x0, minimum_lane_samples(ps, s)), lane_contrast(ps, k, x0));
      }
    out.push_back(w.check("lane_contrast_oracle", tol.oracle * std::max(1.0, ps.intensity())));
  }
  {
    Worst w;
    for (int i = 0; i < 10; ++i) {
      const double x = unit_point(i + 60) * 2.0 * L, z = unit_point(i + 70) * ps.talbot_period();
      w.add(reconstruct_intensity(ps, 2 * ps.n_max(), x, z), intensity(ps, x, z));
    }
    out.push_back(w.check("reconstruction_completeness", tol.completeness * std::max(1.0, ps.intensity())));
  }
  if (c.identity_points > 0) {
    Worst w;
    for (int i = 0; i < c.identity_points; ++i) {
      const int k = static_cast<int>(std::lround(unit_point(i + 80) * 2 * c.k_max)) - c.k_max;
      const double x = unit_point(i + 90) * 2.0 * L - L;
      w.add(structure_from_periodic_wigner(ps, k, x), grating_structure(ps, k, x / L));
    }
    out.push_back(w.check("periodic_wigner_identity", tol.identity * std::max(1.0, ps.intensity())));
  }
  if (c.kind == "sinusoidal") {
    Worst w;
    for (int k = -c.k_max; k <= c.k_max; ++k)
      for (int i = 0; i < 6; ++i) {
        const double x0 = unit_point(i + 11 * k + 200) * 2.0 * L;
        w.add(lane_contrast(ps, k, x0), sinusoidal_contrast(c.alpha, k, x0, c.intensity, L));
      }
    out.push_back(w.check("bessel_closed_form", tol.closed_form * std::max(1.0, c.intensity)));
  }
  return out;
}

std::vector<CheckResult> semiclassical_checks(const ScenarioConfig& c, const PotentialModel& pm, const LevelTable& levels) {
  std::vector<CheckResult> out;
  bool monotone = true;
  for (std::size_t i = 1; i < levels.energies().size(); ++i)
    if (!(levels.energies()[i] > levels.energies()[i - 1])) monotone = false;
  CheckResult m = residual_check("levels_monotone", monotone ? 1.0 : 0.0, 1.0, 0.0);
  out.push_back(m);
  {
    Worst w;
    for (int n = levels.n_lo(); n <= levels.n_hi(); ++n) w.add(pm.action(levels.at(n)), 2.0 * kPi * (n + 0.5));
    out.push_back(w.check("bohr_sommerfeld_residual", 1e-9 * (levels.n_hi() + 1)));
  }
  if (c.potential == "harmonic") {
    Worst w;
    for (int n = levels.n_lo(); n <= levels.n_hi(); ++n) w.add(levels.at(n), (n + 0.5) * c.omega);
    out.push_back(w.check("harmonic_levels_exact", 1e-10));
  }
  const auto sr = slope_ratio_check(pm, levels, c.level, c.order, c.order_prime, c.x0);
  {
    const double tolerance = c.potential == "harmonic" ? 1e-12 : 0.05 * std::abs(sr.expected);
    CheckResult r = residual_check("slope_ratio", sr.ratio, sr.expected, tolerance,
                                   sr.refused ? "refused: " + sr.warning.value_or("") : "");
    if (sr.refused) r.passed = false;
    out.push_back(r);
  }
  {
    const auto anchors = enumerate_anchors(pm, levels, c.level, c.order, c.x0, c.t0, c.t0 + std::abs(c.t_span));
    Worst w, sym;
    for (double t : anchors) {
      w.add(phase_anchor_residual(pm, levels, c.level, c.order, c.x0, t), 0.0);
      if (pm.symmetric() && std::abs(c.x0 - pm.minimum_position()) < 1e-14)
        sym.add(phase_anchor_residual_symmetric(levels, c.level, c.order, t),
                phase_anchor_residual(pm, levels, c.level, c.order, c.x0, t));
    }
    out.push_back(w.check("anchor_residual", 1e-9, std::to_string(anchors.size()) + " anchors"));
    if (sym.residual >= 0.0) out.push_back(sym.check("anchor_symmetric_form", 1e-8));
  }
  {
    OdeOptions a, b;
    const double h = std::abs(c.t_span) / 2000.0;
    a.fixed_step = h;
    b.fixed_step = h / 2.0;
    const double span = c.t_span;
    const auto ca = channel_trajectory(pm, levels, c.level, c.order, c.x0, c.t0, span, a);
    const auto cb = channel_trajectory(pm, levels, c.level, c.order, c.x0, c.t0, span, b);
    double sup = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < ca.t.size() && 2 * i < cb.t.size(); ++i) {
      sup = std::max(sup, std::abs(ca.x[i] - cb.x[2 * i]));
      scale = std::max(scale, std::abs(cb.x[2 * i]));
    }
    CheckResult r = residual_check("ode_step_halving", sup / std::max(scale, 1e-300), 0.0, 1e-6, "relative sup-norm");
    out.push_back(r);
  }
  return out;
}

std::vector<StructureFunctionTable> box_tables(const EnergySpectrum& spec, int k_max, std::size_t samples) {
  std::vector<StructureFunctionTable> tables;
  for (int k = -k_max; k <= k_max; ++k) tables.push_back(tabulate_structure(spec, k, samples));
  return tables;
}

// Tabulates S^_k in the same table shape as the box (z over one half period).
std::vector<StructureFunctionTable> periodic_tables(const PeriodicSpectrum& ps, int k_max, std::size_t samples) {
  std::vector<StructureFunctionTable> tables;
  for (int k = -k_max; k <= k_max; ++k) {
    StructureFunctionTable t;
    t.k = k;
    t.z.resize(samples);
    t.s.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      t.z[i] = static_cast<double>(i) / static_cast<double>(samples);
      t.s[i] = grating_structure(ps, k, t.z[i]);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

nlohmann::json structure_json(const LinearStructure& s) {
  nlohmann::json j;
  j["kind"] = std::string(kind_name(s.kind));
  j["k"] = s.k;
  j["x0"] = s.x0;
  j["structure_value"] = s.depth_or_height;
  j["width_horizontal"] = s.width_horizontal ? nlohmann::json(*s.width_horizontal) : nlohmann::json(nullptr);
  j["width_perpendicular"] = s.width_perpendicular ? nlohmann::json(*s.width_perpendicular) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json lines_json(const LineReport& r, const EnergySpectrum& spec) {
  nlohmann::json j;
  j["family"] = {{"period", r.family.period}, {"offset", r.family.offset}};
  j["visibility_bound"] = r.visibility_bound;
  j["predicted"] = nlohmann::json::array();
  for (const auto& p : r.predicted) {
    j["predicted"].push_back({{"k", p.entry.k},
                              {"l", p.entry.l},
                              {"kind", std::string(kind_name(p.entry.kind))},
                              {"slope", p.entry.slope},
                              {"intercept", p.entry.intercept * spec.config().length},
                              {"x0", p.x0},
                              {"structure_value", p.structure},
                              {"mean_density_estimate", p.estimate},
                              {"mean_density_exact", p.exact ? nlohmann::json(*p.exact) : nlohmann::json(nullptr)},
                              {"above_threshold", p.above_threshold},
                              {"extracted", p.extracted},
                              {"kind_agrees", p.kind_agrees}});
  }
  j["extracted"] = nlohmann::json::array();
  for (const auto& e : r.extracted) {
    auto s = structure_json(e.structure);
    s["predicted"] = e.predicted;
    s["status"] = e.predicted ? "predicted by interference, found by structure extraction"
                              : "not predicted by interference, found by structure extraction";
    j["extracted"].push_back(s);
  }
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string lines_report_json(const LineReport& report, const EnergySpectrum& spec, const std::string& scenario) {
  nlohmann::json j = lines_json(report, spec);
  j["scenario"] = scenario;
  j["spectrum"] = {{"tag", tag_name(spec.tag())}, {"n_max", spec.n_max()}, {"captured_norm", spec.captured_norm()}};
  j["warnings"] = spec.warnings();
  return j.dump(2) + "\n";
}

std::vector<CheckResult> verify(const ScenarioConfig& c) {
  c.validate();
  switch (c.system) {
    case System::box: {
      const auto spec = build_box_spectrum(c);
      return box_checks(c, spec, box_tables(spec, c.k_max, std::min<std::size_t>(c.z_samples, 1024)));
    }
    case System::grating:
    case System::rotator:
      return periodic_checks(c, build_periodic_spectrum(c));
    case System::semiclassical: {
      const auto pm = build_potential(c);
      return semiclassical_checks(c, pm, bohr_sommerfeld_levels(pm, c.n_lo, c.n_hi));
    }
  }
  return {};
}

ScenarioReport run_scenario(const ScenarioConfig& c) {
  c.validate();
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report;
  report.name = c.name;
  report.system = c.system;
  std::error_code ec;
  std::filesystem::create_directories(c.output_dir, ec);
  if (ec) throw IoError("cannot create output directory " + c.output_dir.string() + ": " + ec.message());
  auto out = [&](const std::string& file) {
    report.files.push_back(c.output_dir / file);
    return c.output_dir / file;
  };

  if (c.system == System::box) {
    const auto spec = build_box_spectrum(c);
    report.warnings = spec.warnings();
    const double t_max = c.t_max > 0.0 ? c.t_max : spec.config().revival_period();
    report.carpet = c.reconstruct_k_max >= 0 ? reconstruction_carpet(spec, c.reconstruct_k_max, c.nx, c.nt, t_max)
                                             : box_carpet(spec, c.nx, c.nt, t_max);
    write_pgm(report.carpet, out("carpet.pgm"));
    report.tables = box_tables(spec, c.k_max, c.z_samples);
    for (const auto& t : report.tables) write_structure_csv(t, out("S_" + std::to_string(t.k) + ".csv"));
    report.lines = cross_reference_lines(spec, report.tables, c.k_max, c.l_min, c.l_max);
    write_text(out("lines.json"), lines_report_json(*report.lines, spec, c.name));
    report.checks = box_checks(c, spec, report.tables);
  } else if (c.system == System::grating || c.system == System::rotator) {
    const auto ps = build_periodic_spectrum(c);
    const double t_max = c.t_max > 0.0 ? c.t_max : ps.talbot_period();
    report.carpet = c.system == System::rotator ? rotator_carpet(ps, c.nx, c.nt, t_max) : grating_carpet(ps, c.nx, c.nt, t_max);
    write_pgm(report.carpet, out("carpet.pgm"));
    report.tables = periodic_tables(ps, c.k_max, c.z_samples);
    nlohmann::json j;
    j["scenario"] = c.name;
    j["system"] = std::string(system_name(c.system));
    j["intensity"] = ps.intensity();
    j["lanes"] = nlohmann::json::array();
    BoxConfig geometry{ps.length(), ps.speed()};
    for (const auto& t : report.tables) {
      write_structure_csv(t, out("S_" + std::to_string(t.k) + ".csv"));
      for (const auto& s : find_linear_structures(t, geometry)) {
        auto e = structure_json(s);
        e["lane_contrast"] = lane_contrast(ps, s.k, s.x0);
        j["lanes"].push_back(e);
      }
    }
    write_text(out("lines.json"), j.dump(2) + "\n");
    report.checks = periodic_checks(c, ps);
  } else {
    const auto pm = build_potential(c);
    const auto levels = bohr_sommerfeld_levels(pm, c.n_lo, c.n_hi);
    {
      std::string csv = "n,E\n";
      for (int n = levels.n_lo(); n <= levels.n_hi(); ++n)
        csv += std::to_string(n) + "," + format_double(levels.at(n)) + "\n";
      write_text(out("levels.csv"), csv);
    }
    nlohmann::json j;
    j["scenario"] = c.name;
    j["potential"] = pm.name();
    j["channels"] = nlohmann::json::array();
    for (int k : {c.order, -c.order, c.order_prime}) {
      const auto ch = channel_trajectory(pm, levels, c.level, k, c.x0, c.t0, c.t_span);
      std::string csv = "t,x\n";
      for (std::size_t i = 0; i < ch.t.size(); ++i) csv += format_double(ch.t[i]) + "," + format_double(ch.x[i]) + "\n";
      write_text(out("channel_k" + std::to_string(k) + ".csv"), csv);
      j["channels"].push_back({{"k", k},
                               {"samples", ch.t.size()},
                               {"exit_time", ch.exit_time ? nlohmann::json(*ch.exit_time) : nlohmann::json(nullptr)}});
    }
    const auto sr = slope_ratio_check(pm, levels, c.level, c.order, c.order_prime, c.x0);
    j["slope_ratio"] = {{"ratio", sr.ratio},
                        {"expected", sr.expected},
                        {"deviation", sr.deviation},
                        {"trajectory_ratio", sr.trajectory_ratio},
                        {"spacing_variation", sr.spacing_variation},
                        {"refused", sr.refused},
                        {"warning", sr.warning ? nlohmann::json(*sr.warning) : nlohmann::json(nullptr)}};
    j["anchors"] = enumerate_anchors(pm, levels, c.level, c.order, c.x0, c.t0, c.t0 + std::abs(c.t_span));
    write_text(out("semiclassical.json"), j.dump(2) + "\n");
    report.checks = semiclassical_checks(c, pm, levels);
  }
  write_checks_csv(report.checks, out("oracles.csv"));
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qcarpet
