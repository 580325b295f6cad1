// qcarpet command-line front end.
//
// Every subcommand accepts --config <file> plus one flag per scenario key,
// spelled --section.key (for example --spectrum.kind gaussian). Flags override
// the file. Exit codes: 0 ok, 1 validation, 2 numeric failure, 3 I/O.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "qcarpet/error.hpp"
#include "qcarpet/scenario.hpp"
#include "qcarpet/wigner.hpp"

using namespace qcarpet;

namespace {

struct Overrides {
  std::string config;
  std::map<std::string, std::string> values;
};

void add_scenario_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "scenario file");
  for (const auto& key : ScenarioConfig::keys())
    app->add_option("--" + key, o.values[key], "scenario key " + key);
}

ScenarioConfig resolve(const Overrides& o) {
  ScenarioConfig c = o.config.empty() ? ScenarioConfig{} : ScenarioConfig::load(o.config);
  for (const auto& [key, value] : o.values)
    if (!value.empty()) c.set(key, value);
  c.validate();
  return c;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void require_box(const ScenarioConfig& c, const char* what) {
  if (c.system != System::box) throw ValidationError(std::string(what) + " needs scenario.system = box");
}

int print_checks(const std::vector<CheckResult>& checks) {
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("%-30s %s  residual=%.3e  tol=%.3e  value=%.17g  ref=%.17g%s%s\n", c.name.c_str(),
                c.passed ? "PASS" : "FAIL", c.residual, c.tolerance, c.value, c.reference, c.note.empty() ? "" : "  # ",
                c.note.c_str());
    failed += c.passed ? 0 : 1;
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed == 0 ? 0 : 2;
}

int spectrum_build(const ScenarioConfig& c) {
  require_box(c, "spectrum build");
  const auto spec = build_box_spectrum(c);
  ensure_dir(c.output_dir);
  const auto path = c.output_dir / "spectrum.csv";
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  f << "n,re,im,abs2\n";
  const auto a = spec.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i)
    f << i + 1 << ',' << format_double(a[i].real()) << ',' << format_double(a[i].imag()) << ','
      << format_double(std::norm(a[i])) << '\n';
  if (!f) throw IoError("failed writing " + path.string());
  std::printf("tag=%s n_max=%d captured_norm=%.17g\n", tag_name(spec.tag()).c_str(), spec.n_max(), spec.captured_norm());
  for (const auto& w : spec.warnings()) std::printf("warning: %s\n", w.c_str());
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int structure_eval(const ScenarioConfig& c, std::optional<int> k, std::optional<double> z) {
  require_box(c, "structure eval");
  const auto spec = build_box_spectrum(c);
  if (k && z) {
    std::printf("%s\n", format_double(structure_function(spec, *k, *z)).c_str());
    return 0;
  }
  ensure_dir(c.output_dir);
  const int lo = k ? *k : -c.k_max, hi = k ? *k : c.k_max;
  for (int kk = lo; kk <= hi; ++kk) {
    const auto path = c.output_dir / ("S_" + std::to_string(kk) + ".csv");
    write_structure_csv(tabulate_structure(spec, kk, c.z_samples), path);
    std::printf("wrote %s\n", path.string().c_str());
  }
  return 0;
}

int carpet_render(const ScenarioConfig& c) {
  CarpetGrid grid;
  if (c.system == System::box) {
    const auto spec = build_box_spectrum(c);
    const double t_max = c.t_max > 0.0 ? c.t_max : spec.config().revival_period();
    grid = c.reconstruct_k_max >= 0 ? reconstruction_carpet(spec, c.reconstruct_k_max, c.nx, c.nt, t_max)
                                    : box_carpet(spec, c.nx, c.nt, t_max);
  } else if (c.system == System::grating || c.system == System::rotator) {
    const auto ps = build_periodic_spectrum(c);
    const double t_max = c.t_max > 0.0 ? c.t_max : ps.talbot_period();
    grid = c.system == System::rotator ? rotator_carpet(ps, c.nx, c.nt, t_max) : grating_carpet(ps, c.nx, c.nt, t_max);
  } else {
    throw ValidationError("carpet render is not available for the semiclassical system");
  }
  ensure_dir(c.output_dir);
  const auto path = c.output_dir / "carpet.pgm";
  write_pgm(grid, path);
  std::printf("wrote %s (%zux%zu)\n", path.string().c_str(), grid.nx, grid.nt);
  return 0;
}

int predict_lines_command(const ScenarioConfig& c) {
  require_box(c, "predict lines");
  const auto spec = build_box_spectrum(c);
  std::vector<StructureFunctionTable> tables;
  for (int k = -c.k_max; k <= c.k_max; ++k) tables.push_back(tabulate_structure(spec, k, c.z_samples));
  const auto report = cross_reference_lines(spec, tables, c.k_max, c.l_min, c.l_max);
  std::printf("family: period %d offset %d, visibility bound %d\n", report.family.period, report.family.offset,
              report.visibility_bound);
  for (const auto& p : report.predicted)
    std::printf("predicted k=%d l=%d %-7s slope=%+d x0=%.6f S=%+.6f extracted=%s\n", p.entry.k, p.entry.l,
                std::string(kind_name(p.entry.kind)).c_str(), p.wave, p.x0, p.structure, p.extracted ? "yes" : "no");
  for (const auto& e : report.extracted)
    if (!e.predicted)
      std::printf("not predicted by interference, found by structure extraction: k=%d %s x0=%.6f S=%+.6f\n",
                  e.structure.k, std::string(kind_name(e.structure.kind)).c_str(), e.structure.x0,
                  e.structure.depth_or_height);
  ensure_dir(c.output_dir);
  const auto path = c.output_dir / "lines.json";
  std::ofstream f(path);
  if (!f) throw IoError("cannot open " + path.string());
  f << lines_report_json(report, spec, c.name);
  if (!f) throw IoError("failed writing " + path.string());
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

int wigner_check(const ScenarioConfig& c) {
  std::vector<CheckResult> checks;
  for (auto& r : verify(c))
    if (r.name.find("wigner") != std::string::npos) checks.push_back(r);
  if (checks.empty()) throw ValidationError("wigner check needs a box, grating or rotator scenario with identity_points > 0");
  return print_checks(checks);
}

int report_bundle(const ScenarioConfig& c) {
  const auto r = run_scenario(c);
  for (const auto& w : r.warnings) std::printf("warning: %s\n", w.c_str());
  for (const auto& f : r.files) std::printf("wrote %s\n", f.string().c_str());
  const int status = print_checks(r.checks);
  std::printf("elapsed %.2f s\n", r.seconds);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum carpet travelling-wave analysis"};
  app.require_subcommand(1);

  Overrides o;
  std::optional<int> eval_k;
  std::optional<std::string> eval_z;
  std::function<int(const ScenarioConfig&)> action;

  auto* spectrum = app.add_subcommand("spectrum", "energy amplitudes");
  spectrum->require_subcommand(1);
  auto* build = spectrum->add_subcommand("build", "build and write the amplitude list");
  add_scenario_flags(build, o);
  build->callback([&] { action = spectrum_build; });

  auto* structure = app.add_subcommand("structure", "structure functions");
  structure->require_subcommand(1);
  auto* eval = structure->add_subcommand("eval", "tabulate S_k, or print one value with --k and --z");
  add_scenario_flags(eval, o);
  eval->add_option("--k", eval_k, "single order");
  eval->add_option("--z", eval_z, "single position x/L (needs --k)");
  eval->callback([&] {
    action = [&](const ScenarioConfig& c) {
      std::optional<double> z;
      if (eval_z) z = parse_scalar(*eval_z, "--z");
      return structure_eval(c, eval_k, z);
    };
  });

  auto* carpet = app.add_subcommand("carpet", "density carpets");
  carpet->require_subcommand(1);
  auto* render = carpet->add_subcommand("render", "render carpet.pgm");
  add_scenario_flags(render, o);
  render->callback([&] { action = carpet_render; });

  auto* predict = app.add_subcommand("predict", "line predictions");
  predict->require_subcommand(1);
  auto* lines = predict->add_subcommand("lines", "interference prediction cross-referenced with extraction");
  add_scenario_flags(lines, o);
  lines->callback([&] { action = predict_lines_command; });

  auto* wigner = app.add_subcommand("wigner", "phase-space identities");
  wigner->require_subcommand(1);
  auto* wcheck = wigner->add_subcommand("check", "structure function versus Wigner evaluations");
  add_scenario_flags(wcheck, o);
  wcheck->callback([&] { action = wigner_check; });

  auto* grating = app.add_subcommand("grating", "periodic gratings");
  grating->require_subcommand(1);
  auto* grun = grating->add_subcommand("run", "carpet, lane contrasts and checks for a grating or rotator");
  add_scenario_flags(grun, o);
  grun->callback([&] {
    action = [](const ScenarioConfig& c) {
      if (c.system != System::grating && c.system != System::rotator)
        throw ValidationError("grating run needs scenario.system = grating or rotator");
      return report_bundle(c);
    };
  });

  auto* semi = app.add_subcommand("semiclassical", "semiclassical channels");
  semi->require_subcommand(1);
  auto* trace = semi->add_subcommand("trace", "levels, channel trajectories and anchors");
  add_scenario_flags(trace, o);
  trace->callback([&] {
    action = [](const ScenarioConfig& c) {
      if (c.system != System::semiclassical) throw ValidationError("semiclassical trace needs scenario.system = semiclassical");
      return report_bundle(c);
    };
  });

  auto* ver = app.add_subcommand("verify", "run the invariant suite; nonzero exit on failure");
  add_scenario_flags(ver, o);
  ver->callback([&] { action = [](const ScenarioConfig& c) { return print_checks(verify(c)); }; });

  auto* run = app.add_subcommand("run", "full scenario bundle");
  add_scenario_flags(run, o);
  run->callback([&] { action = report_bundle; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    return action(resolve(o));
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
