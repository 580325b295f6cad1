#include "qcarpet/carpet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

#include "qcarpet/error.hpp"
#include "qcarpet/travelling_waves.hpp"

namespace qcarpet {

double CarpetGrid::x_at(std::size_t ix) const {
  return x_min + (static_cast<double>(ix) + 0.5) * (x_max - x_min) / static_cast<double>(nx);
}

double CarpetGrid::t_at(std::size_t it) const {
  return static_cast<double>(it) * t_max / static_cast<double>(nt);
}

void CarpetGrid::validate() const {
  if (values.size() != nx * nt) throw ValidationError("carpet grid size does not match its shape");
  for (double v : values)
    if (!std::isfinite(v)) throw NumericError("carpet grid contains non-finite values");
    else if (!signed_values && v < -1e-12) throw NumericError("carpet grid contains negative values");
}

CarpetGrid fill_carpet(std::size_t nx, std::size_t nt, double x_min, double x_max, double t_max,
                       const std::function<std::vector<double>(double, const std::vector<double>&)>& row) {
  if (nx == 0 || nt == 0) throw ValidationError("carpet grid needs nx, nt >= 1");
  if (!(x_max > x_min)) throw ValidationError("carpet x range is empty");
  if (!(t_max > 0.0)) throw ValidationError("carpet t_max must be > 0");
  CarpetGrid g;
  g.nx = nx;
  g.nt = nt;
  g.x_min = x_min;
  g.x_max = x_max;
  g.t_max = t_max;
  g.values.resize(nx * nt);
  std::vector<double> xs(nx);
  for (std::size_t i = 0; i < nx; ++i) xs[i] = g.x_at(i);

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), nt));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t it = w; it < nt; it += workers) {
        const auto r = row(g.t_at(it), xs);
        std::copy(r.begin(), r.end(), g.values.begin() + static_cast<std::ptrdiff_t>(it * nx));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return g;
}

CarpetGrid box_carpet(const EnergySpectrum& spec, std::size_t nx, std::size_t nt, double t_max) {
  auto g = fill_carpet(nx, nt, 0.0, spec.config().length, t_max, [&](double t, const std::vector<double>& xs) {
    const auto psi = evaluate_row(spec, t, xs);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::norm(psi[i]);
    return out;
  });
  return g;
}

CarpetGrid reconstruction_carpet(const EnergySpectrum& spec, int k_max, std::size_t nx, std::size_t nt,
                                 double t_max) {
  auto g = fill_carpet(nx, nt, 0.0, spec.config().length, t_max,
                       [&](double t, const std::vector<double>& xs) { return reconstruct_row(spec, k_max, t, xs); });
  g.signed_values = true;
  return g;
}

CarpetGrid grating_carpet(const PeriodicSpectrum& ps, std::size_t nx, std::size_t nz, double z_max) {
  auto g = fill_carpet(nx, nz, 0.0, 2.0 * ps.length(), z_max, [&](double z, const std::vector<double>& xs) {
    const auto f = periodic_field_row(ps, z, xs);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::norm(f[i]);
    return out;
  });
  g.t_label = "z";
  return g;
}

CarpetGrid rotator_carpet(const PeriodicSpectrum& ps, std::size_t ntheta, std::size_t nt, double t_max) {
  auto g = fill_carpet(ntheta, nt, -kPi, kPi, t_max, [&](double t, const std::vector<double>& xs) {
    const auto f = periodic_field_row(ps, t, xs);
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::norm(f[i]);
    return out;
  });
  g.x_label = "theta";
  return g;
}

std::vector<std::uint8_t> gray_levels(const CarpetGrid& grid) {
  grid.validate();
  double top = 0.0;
  for (double v : grid.values) top = std::max(top, v);
  std::vector<std::uint8_t> out(grid.values.size(), 255);
  if (top <= 0.0) return out;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const double f = std::clamp(grid.values[i], 0.0, top) / top;
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - f)));
  }
  return out;
}

std::string pgm_bytes(const CarpetGrid& grid) {
  const auto levels = gray_levels(grid);
  std::string out = "P5\n" + std::to_string(grid.nx) + " " + std::to_string(grid.nt) + "\n255\n";
  out.append(levels.begin(), levels.end());
  return out;
}

void write_pgm(const CarpetGrid& grid, const std::filesystem::path& path) {
  const std::string bytes = pgm_bytes(grid);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace qcarpet
