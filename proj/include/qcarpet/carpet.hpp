#pragma once

// Spacetime grids of P(x, t) (or I(x, z)) and their grayscale rendering.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qcarpet/grating.hpp"
#include "qcarpet/spectrum.hpp"

namespace qcarpet {

/// values[it * nx + ix] at x_ix = x_min + (ix + 1/2)(x_max - x_min)/nx and
/// t_it = it * t_max / nt, so row 0 is t = 0.
struct CarpetGrid {
  std::size_t nx = 0;
  std::size_t nt = 0;
  double x_min = 0.0;
  double x_max = 1.0;
  double t_max = 1.0;
  std::string x_label = "x";
  std::string t_label = "t";
  std::vector<double> values;
  // truncated reconstructions may dip below zero; densities may not
  bool signed_values = false;

  double x_at(std::size_t ix) const;
  double t_at(std::size_t it) const;
  double at(std::size_t ix, std::size_t it) const { return values[it * nx + ix]; }
  void validate() const;
};

/// Exact density of the spectrum.
CarpetGrid box_carpet(const EnergySpectrum& spec, std::size_t nx, std::size_t nt, double t_max);

/// Travelling-wave reconstruction with |k| <= k_max.
CarpetGrid reconstruction_carpet(const EnergySpectrum& spec, int k_max, std::size_t nx, std::size_t nt,
                                 double t_max);

/// Intensity over one grating period x in [0, 2L).
CarpetGrid grating_carpet(const PeriodicSpectrum& ps, std::size_t nx, std::size_t nz, double z_max);

/// Rotator probability on the cylinder theta in [-pi, pi).
CarpetGrid rotator_carpet(const PeriodicSpectrum& ps, std::size_t ntheta, std::size_t nt, double t_max);

/// Fills a grid from any row function (rows computed in parallel).
CarpetGrid fill_carpet(std::size_t nx, std::size_t nt, double x_min, double x_max, double t_max,
                       const std::function<std::vector<double>(double, const std::vector<double>&)>& row);

/// 8-bit gray levels: linear map [0, max] onto 255..0 (dark = high), values
/// below zero clamped. A grid whose maximum is zero renders white; any other
/// constant grid renders black.
std::vector<std::uint8_t> gray_levels(const CarpetGrid& grid);

/// Binary PGM (P5) bytes, top row t = 0.
std::string pgm_bytes(const CarpetGrid& grid);
void write_pgm(const CarpetGrid& grid, const std::filesystem::path& path);

}  // namespace qcarpet
