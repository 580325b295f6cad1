#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace testing {

// splitmix64; every property test seeds its own stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  std::complex<double> complex_unit() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  /// Random normalized amplitude list with n modes.
  std::vector<std::complex<double>> amplitudes(int n) {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
    double norm = 0.0;
    for (auto& v : a) {
      v = complex_unit();
      norm += std::norm(v);
    }
    for (auto& v : a) v /= std::sqrt(norm);
    return a;
  }

 private:
  std::uint64_t state_;
};

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace testing
