#pragma once

// Scenario files and the report bundle.
//
// A scenario is an INI-style text file:
//
//   # comment
//   [section]
//   key = value
//
// Every key is addressed as section.key; unknown sections or keys are
// rejected. See README.md for the full key list.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcarpet/carpet.hpp"
#include "qcarpet/grating.hpp"
#include "qcarpet/interference.hpp"
#include "qcarpet/semiclassical.hpp"
#include "qcarpet/spectrum.hpp"
#include "qcarpet/travelling_waves.hpp"

namespace qcarpet {

enum class System { box, grating, rotator, semiclassical };

struct Tolerances {
  double norm = kNormTolerance;
  double oracle = 1e-9;
  double identity = 1e-6;
  double completeness = 1e-10;
  double exactness = 1e-12;
  double closed_form = 1e-8;
  double gaussian_closed_form = 1e-4;
};

struct ScenarioConfig {
  std::string name = "scenario";
  System system = System::box;

  // [spectrum]
  std::string kind = "uniform";
  int n_max = kDefaultModes;
  double center = 1.0 / 3.0;
  double width = 1.0 / 40.0;
  double momentum = 0.0;
  int count = 20;
  int period = 3;
  int offset = 1;
  int first = 0;
  int n = 1;
  std::vector<complex> amplitudes;
  double alpha = 1.0;
  double intensity = 1.0;

  BoxConfig box;

  // [grid]; t_max = 0 means one revival (Talbot) period
  std::size_t nx = 512;
  std::size_t nt = 512;
  double t_max = 0.0;

  // [analysis]
  int k_max = 5;
  int reconstruct_k_max = -1;  // >= 0 renders the truncated reconstruction
  std::size_t z_samples = kDefaultZSamples;
  int l_min = 0;
  int l_max = 2;
  int identity_points = 6;

  Tolerances tolerances;

  // [semiclassical]
  std::string potential = "harmonic";
  double mass = 1.0;
  double omega = 1.0;
  double coefficient = 1.0;
  double exponent = 2.0;
  double scale = 1.0;
  std::string table_file;
  int level = 10;
  int order = 1;
  int order_prime = 2;
  double x0 = 0.0;
  double t0 = 0.0;
  double t_span = 10.0;
  int n_lo = 0;
  int n_hi = 40;

  // [rotator]
  double inertia = 0.5;

  // [output]
  std::filesystem::path output_dir = "out";

  /// Applies one section.key = value assignment (ValidationError on unknown keys).
  void set(const std::string& key, const std::string& value);
  void validate() const;

  static ScenarioConfig parse(const std::string& text, const std::string& origin = "<text>");
  static ScenarioConfig load(const std::filesystem::path& path);
  /// Every accepted section.key, for CLI flag generation.
  static const std::vector<std::string>& keys();
};

/// A config value: a number or a product/quotient of numbers and pi (1/3, 15*pi).
double parse_scalar(const std::string& text, const std::string& key);

std::string_view system_name(System s);

EnergySpectrum build_box_spectrum(const ScenarioConfig& config);
PeriodicSpectrum build_periodic_spectrum(const ScenarioConfig& config);
PotentialModel build_potential(const ScenarioConfig& config);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

/// Extracted structure matched against the predicted line family.
struct CrossReference {
  LinearStructure structure;
  bool predicted = false;
  std::optional<LineEntry> line;
};

/// Predicted line with its structure-function value and extraction status.
struct PredictedLine {
  LineEntry entry;
  double x0 = 0.0;  // intercept reduced into [0, L)
  int wave = 0;     // wave index of the slope
  double structure = 0.0;
  double estimate = 0.0;              // depth or ridge-height estimate
  std::optional<double> exact;        // amplitude-form mean when available
  bool above_threshold = false;
  bool extracted = false;
  bool kind_agrees = false;
};

struct LineReport {
  PeriodicProvenance family{1, 0};
  int visibility_bound = 0;
  std::vector<PredictedLine> predicted;
  std::vector<CrossReference> extracted;
};

/// Predicted lines for |wave| <= k_max versus structures extracted from the tables.
LineReport cross_reference_lines(const EnergySpectrum& spec, const std::vector<StructureFunctionTable>& tables,
                                 int k_max, int l_min, int l_max);

struct ScenarioReport {
  std::string name;
  System system = System::box;
  CarpetGrid carpet;
  std::vector<StructureFunctionTable> tables;
  std::optional<LineReport> lines;
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
  double seconds = 0.0;

  bool all_passed() const;
};

/// Builds everything, writes carpet.pgm, S_<k>.csv, lines.json and oracles.csv
/// (or the semiclassical equivalents) into config.output_dir.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// The invariant suite for the configured scenario; nothing is written.
std::vector<CheckResult> verify(const ScenarioConfig& config);

/// lines.json document for a box line report (pretty-printed).
std::string lines_report_json(const LineReport& report, const EnergySpectrum& spec, const std::string& scenario);

void write_structure_csv(const StructureFunctionTable& table, const std::filesystem::path& path);
void write_checks_csv(const std::vector<CheckResult>& checks, const std::filesystem::path& path);
std::string format_double(double v);

}  // namespace qcarpet
