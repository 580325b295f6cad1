#include "qcarpet/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "qcarpet/analytic.hpp"
#include "qcarpet/error.hpp"

namespace qcarpet {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, const std::string& key) {
  const std::string t = trim(token);
  if (t == "pi") return kPi;
  double v = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end || t.empty())
    throw ValidationError("invalid number '" + t + "' for " + key);
  return v;
}

// number, or a product/quotient of numbers and "pi": 1/3, 15*pi, pi/40
double parse_real(const std::string& text, const std::string& key) {
  const std::string s = trim(text);
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || ((s[i] == '*' || s[i] == '/') && i > 0 && s[i - 1] != 'e' && s[i - 1] != 'E')) {
      const double v = parse_number(s.substr(start, i - start), key);
      value = op == '*' ? value * v : value / v;
      if (i < s.size()) op = s[i];
      start = i + 1;
    }
  }
  if (!std::isfinite(value)) throw ValidationError("non-finite value for " + key);
  return value;
}

long parse_integer(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  long v = 0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end || t.empty())
    throw ValidationError("invalid integer '" + t + "' for " + key);
  return v;
}

std::vector<complex> parse_amplitudes(const std::string& text, const std::string& key) {
  std::vector<complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      out.emplace_back(parse_real(item, key), 0.0);
    else
      out.emplace_back(parse_real(item.substr(0, colon), key), parse_real(item.substr(colon + 1), key));
  }
  if (out.empty()) throw ValidationError(key + " needs at least one amplitude");
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, const std::string&)>;

template <class T>
Setter integer_field(T ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& key, const std::string& v) {
    c.*field = static_cast<T>(parse_integer(v, key));
  };
}

Setter real_field(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& key, const std::string& v) { c.*field = parse_real(v, key); };
}

Setter tol_field(double Tolerances::*field) {
  return [field](ScenarioConfig& c, const std::string& key, const std::string& v) {
    c.tolerances.*field = parse_real(v, key);
  };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"scenario.name", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.name = trim(v); }},
      {"scenario.system",
       [](ScenarioConfig& c, const std::string& key, const std::string& v) {
         const std::string s = trim(v);
         if (s == "box") c.system = System::box;
         else if (s == "grating") c.system = System::grating;
         else if (s == "rotator") c.system = System::rotator;
         else if (s == "semiclassical") c.system = System::semiclassical;
         else throw ValidationError("unknown " + key + " '" + s + "'");
       }},
      {"spectrum.kind", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.kind = trim(v); }},
      {"spectrum.n_max", integer_field(&ScenarioConfig::n_max)},
      {"spectrum.center", real_field(&ScenarioConfig::center)},
      {"spectrum.width", real_field(&ScenarioConfig::width)},
      {"spectrum.momentum", real_field(&ScenarioConfig::momentum)},
      {"spectrum.count", integer_field(&ScenarioConfig::count)},
      {"spectrum.period", integer_field(&ScenarioConfig::period)},
      {"spectrum.offset", integer_field(&ScenarioConfig::offset)},
      {"spectrum.first", integer_field(&ScenarioConfig::first)},
      {"spectrum.n", integer_field(&ScenarioConfig::n)},
      {"spectrum.amplitudes",
       [](ScenarioConfig& c, const std::string& key, const std::string& v) { c.amplitudes = parse_amplitudes(v, key); }},
      {"spectrum.alpha", real_field(&ScenarioConfig::alpha)},
      {"spectrum.intensity", real_field(&ScenarioConfig::intensity)},
      {"box.length", [](ScenarioConfig& c, const std::string& key, const std::string& v) { c.box.length = parse_real(v, key); }},
      {"box.speed", [](ScenarioConfig& c, const std::string& key, const std::string& v) { c.box.speed = parse_real(v, key); }},
      {"grid.nx", integer_field(&ScenarioConfig::nx)},
      {"grid.nt", integer_field(&ScenarioConfig::nt)},
      {"grid.t_max", real_field(&ScenarioConfig::t_max)},
      {"analysis.k_max", integer_field(&ScenarioConfig::k_max)},
      {"analysis.reconstruct_k_max", integer_field(&ScenarioConfig::reconstruct_k_max)},
      {"analysis.z_samples", integer_field(&ScenarioConfig::z_samples)},
      {"analysis.l_min", integer_field(&ScenarioConfig::l_min)},
      {"analysis.l_max", integer_field(&ScenarioConfig::l_max)},
      {"analysis.identity_points", integer_field(&ScenarioConfig::identity_points)},
      {"tolerances.norm", tol_field(&Tolerances::norm)},
      {"tolerances.oracle", tol_field(&Tolerances::oracle)},
      {"tolerances.identity", tol_field(&Tolerances::identity)},
      {"tolerances.completeness", tol_field(&Tolerances::completeness)},
      {"tolerances.exactness", tol_field(&Tolerances::exactness)},
      {"tolerances.closed_form", tol_field(&Tolerances::closed_form)},
      {"tolerances.gaussian_closed_form", tol_field(&Tolerances::gaussian_closed_form)},
      {"semiclassical.potential", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.potential = trim(v); }},
      {"semiclassical.mass", real_field(&ScenarioConfig::mass)},
      {"semiclassical.omega", real_field(&ScenarioConfig::omega)},
      {"semiclassical.coefficient", real_field(&ScenarioConfig::coefficient)},
      {"semiclassical.exponent", real_field(&ScenarioConfig::exponent)},
      {"semiclassical.scale", real_field(&ScenarioConfig::scale)},
      {"semiclassical.table_file", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.table_file = trim(v); }},
      {"semiclassical.n", integer_field(&ScenarioConfig::level)},
      {"semiclassical.k", integer_field(&ScenarioConfig::order)},
      {"semiclassical.k_prime", integer_field(&ScenarioConfig::order_prime)},
      {"semiclassical.x0", real_field(&ScenarioConfig::x0)},
      {"semiclassical.t0", real_field(&ScenarioConfig::t0)},
      {"semiclassical.t_span", real_field(&ScenarioConfig::t_span)},
      {"semiclassical.n_lo", integer_field(&ScenarioConfig::n_lo)},
      {"semiclassical.n_hi", integer_field(&ScenarioConfig::n_hi)},
      {"rotator.inertia", real_field(&ScenarioConfig::inertia)},
      {"output.dir", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.output_dir = trim(v); }},
  };
  return table;
}

}  // namespace

double parse_scalar(const std::string& text, const std::string& key) { return parse_real(text, key); }

std::string_view system_name(System s) {
  switch (s) {
    case System::box: return "box";
    case System::grating: return "grating";
    case System::rotator: return "rotator";
    case System::semiclassical: return "semiclassical";
  }
  return "box";
}

const std::vector<std::string>& ScenarioConfig::keys() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return names;
}

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  for (const auto& [k, setter] : setters())
    if (k == key) {
      setter(*this, key, value);
      return;
    }
  throw ValidationError("unknown configuration key '" + key + "'");
}

ScenarioConfig ScenarioConfig::parse(const std::string& text, const std::string& origin) {
  ScenarioConfig c;
  std::stringstream ss(text);
  std::string line, section;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(number) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError(where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const auto& k : keys())
        if (k.rfind(section + ".", 0) == 0) known = true;
      if (!known) throw ValidationError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected key = value");
    if (section.empty()) throw ValidationError(where + "key outside of a section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    try {
      c.set(key, line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  c.validate();
  return c;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read scenario file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), path.string());
}

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be > 0");
  };
  box.validate();
  if (n_max < 1) throw ValidationError("spectrum.n_max must be >= 1");
  if (nx < 1 || nt < 1) throw ValidationError("grid.nx and grid.nt must be >= 1");
  if (t_max < 0.0 || !std::isfinite(t_max)) throw ValidationError("grid.t_max must be >= 0 (0 selects one period)");
  if (k_max < 1) throw ValidationError("analysis.k_max must be >= 1");
  if (z_samples < 16) throw ValidationError("analysis.z_samples must be >= 16");
  if (identity_points < 0) throw ValidationError("analysis.identity_points must be >= 0");
  positive(tolerances.norm, "tolerances.norm");
  positive(tolerances.oracle, "tolerances.oracle");
  positive(tolerances.identity, "tolerances.identity");
  positive(tolerances.completeness, "tolerances.completeness");
  positive(tolerances.exactness, "tolerances.exactness");
  positive(tolerances.closed_form, "tolerances.closed_form");
  positive(tolerances.gaussian_closed_form, "tolerances.gaussian_closed_form");
  positive(intensity, "spectrum.intensity");
  positive(mass, "semiclassical.mass");
  positive(inertia, "rotator.inertia");
  if (system == System::box) {
    static const char* kinds[] = {"uniform", "gaussian", "stepped", "block", "eigenstate", "amplitudes"};
    if (std::find(std::begin(kinds), std::end(kinds), kind) == std::end(kinds))
      throw ValidationError("spectrum.kind '" + kind + "' is not a box spectrum");
    if (kind == "gaussian") positive(width, "spectrum.width");
    if (kind == "stepped" || kind == "block") {
      if (count < 1) throw ValidationError("spectrum.count must be >= 1");
    }
    if (kind == "stepped" && (period < 1 || offset < 0 || offset >= period))
      throw ValidationError("spectrum.period/offset must satisfy p >= 1, 0 <= r < p");
    if (kind == "eigenstate" && n < 1) throw ValidationError("spectrum.n must be >= 1");
    if (kind == "amplitudes" && amplitudes.empty()) throw ValidationError("spectrum.amplitudes is required");
  } else if (system == System::grating || system == System::rotator) {
    if (kind != "sinusoidal" && kind != "modes")
      throw ValidationError("spectrum.kind '" + kind + "' is not a periodic spectrum (sinusoidal | modes)");
    if (kind == "modes" && amplitudes.empty()) throw ValidationError("spectrum.amplitudes is required");
  } else {
    if (level < 0) throw ValidationError("semiclassical.n must be >= 0");
    if (order == 0 || order_prime == 0) throw ValidationError("semiclassical.k and k_prime must be nonzero");
    if (n_lo < 0 || n_hi < n_lo) throw ValidationError("semiclassical level range is empty");
    if (level < n_lo || level + std::max(std::abs(order), std::abs(order_prime)) > n_hi)
      throw ValidationError("semiclassical.n + |k| must lie within [n_lo, n_hi]");
  }
}

EnergySpectrum build_box_spectrum(const ScenarioConfig& c) {
  if (c.kind == "uniform") return analytic::uniform_spectrum(c.n_max, c.box);
  if (c.kind == "gaussian") {
    const double L = c.box.length;
    return analytic::gaussian_spectrum(c.center * L, c.width * L, c.momentum / L, c.n_max, c.box);
  }
  if (c.kind == "stepped") return analytic::stepped_spectrum(c.count, c.period, c.offset, 0, c.box);
  if (c.kind == "block") return analytic::block_spectrum(c.first, c.count, c.box);
  if (c.kind == "eigenstate") return analytic::eigenstate_spectrum(c.n, c.n_max, c.box);
  if (c.kind == "amplitudes") return EnergySpectrum(c.box, c.amplitudes);
  throw ValidationError("spectrum.kind '" + c.kind + "' is not a box spectrum");
}

PeriodicSpectrum build_periodic_spectrum(const ScenarioConfig& c) {
  const bool rotor = c.system == System::rotator;
  const RotatorConfig rc{c.inertia};
  const double L = rotor ? rc.length() : c.box.length;
  const double V = rotor ? rc.speed() : c.box.speed;
  if (c.kind == "sinusoidal") return sinusoidal_grating(c.alpha, c.intensity, L, V);
  if (c.kind == "modes") {
    const long lo = c.first;
    const long hi = c.first + static_cast<long>(c.amplitudes.size()) - 1;
    const long N = std::max(std::abs(lo), std::abs(hi));
    std::vector<complex> coeffs(static_cast<std::size_t>(2 * N + 1));
    for (std::size_t i = 0; i < c.amplitudes.size(); ++i)
      coeffs[static_cast<std::size_t>(lo + static_cast<long>(i) + N)] = c.amplitudes[i];
    return PeriodicSpectrum(std::move(coeffs), L, V);
  }
  throw ValidationError("spectrum.kind '" + c.kind + "' is not a periodic spectrum");
}

PotentialModel build_potential(const ScenarioConfig& c) {
  if (c.potential == "harmonic") return PotentialModel::harmonic(c.mass, c.omega);
  if (c.potential == "quartic") return PotentialModel::quartic(c.coefficient, c.mass);
  if (c.potential == "power_law") return PotentialModel::power_law(c.scale, c.exponent, c.mass);
  if (c.potential == "table") {
    if (c.table_file.empty()) throw ValidationError("semiclassical.table_file is required for a table potential");
    std::ifstream f(c.table_file);
    if (!f) throw IoError("cannot read potential table " + c.table_file);
    std::vector<double> xs, us;
    std::string line;
    int number = 0;
    while (std::getline(f, line)) {
      ++number;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      for (char& ch : line)
        if (ch == ',') ch = ' ';
      std::stringstream ss(line);
      std::string a, b;
      if (!(ss >> a >> b)) throw ValidationError(c.table_file + ":" + std::to_string(number) + ": expected two columns");
      try {
        xs.push_back(parse_real(a, "x"));
        us.push_back(parse_real(b, "U"));
      } catch (const ValidationError&) {
        if (xs.empty() && number == 1) continue;  // header row
        throw;
      }
    }
    return PotentialModel::table(std::move(xs), std::move(us), c.mass);
  }
  throw ValidationError("unknown semiclassical.potential '" + c.potential + "'");
}

LineReport cross_reference_lines(const EnergySpectrum& spec, const std::vector<StructureFunctionTable>& tables,
                                 int k_max, int l_min, int l_max) {
  const double L = spec.config().length;
  LineReport report;
  report.family = detect_amplitude_period(spec);
  const int p = report.family.period;
  if (l_max < l_min) l_max = l_min + p - 1;
  report.visibility_bound = localization_bound(momentum_spread(spec), spec.config());

  const int line_k_max = std::max(1, k_max / p);
  const LineFamily family = predict_lines_periodic(p, report.family.offset, line_k_max, {l_min, l_max});

  std::vector<std::vector<LinearStructure>> found(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) found[i] = find_linear_structures(tables[i], spec.config());
  auto table_index = [&](int wave) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < tables.size(); ++i)
      if (tables[i].k == wave) return i;
    return std::nullopt;
  };
  auto circular = [L](double a, double b) {
    const double d = std::fmod(std::abs(a - b), L);
    return std::min(d, L - d);
  };

  for (const auto& e : family.entries) {
    const int wave = e.k * p;
    if (std::abs(wave) > k_max) continue;
    PredictedLine pl;
    pl.entry = e;
    pl.wave = wave;
    const double intercept = e.intercept * L;
    pl.x0 = intercept - L * std::floor(intercept / L);
    pl.structure = structure_function(spec, wave, intercept / L);
    pl.estimate = e.kind == StructureKind::channel ? depth_estimate(spec, wave) : ridge_height_estimate(spec, wave);
    // mean along the line through the unreduced intercept
    pl.exact = (spec.captured_norm() + pl.structure) / L;
    pl.above_threshold = std::abs(pl.structure) > kStructureThreshold;
    pl.kind_agrees = (pl.structure < 0.0) == (e.kind == StructureKind::channel);
    if (const auto idx = table_index(wave)) {
      const double step = L / static_cast<double>(tables[*idx].size());
      for (const auto& s : found[*idx]) {
        const bool near = circular(s.x0, pl.x0) <= step;
        bool inside = false;
        if (s.left_zero && s.right_zero) {
          // zero-crossing span, possibly wrapping through z = 0
          const double a = *s.left_zero, b = *s.right_zero;
          double x = std::fmod(pl.x0 - a, L);
          if (x < 0.0) x += L;
          inside = a + x <= b;
        }
        if (near || inside) pl.extracted = true;
      }
    }
    report.predicted.push_back(pl);
  }

  for (std::size_t i = 0; i < tables.size(); ++i) {
    const double step = L / static_cast<double>(tables[i].size());
    for (const auto& s : found[i]) {
      CrossReference cr;
      cr.structure = s;
      for (const auto& pl : report.predicted)
        if (pl.wave == s.k && circular(pl.x0, s.x0) <= step) {
          cr.predicted = true;
          cr.line = pl.entry;
        }
      report.extracted.push_back(cr);
    }
  }
  return report;
}

}  // namespace qcarpet
