// Deterministic random helpers. std::mt19937_64 has a standard-defined
// sequence but the <random> distributions do not, so the uniform and normal
// draws are spelled out here to keep runs byte-stable across platforms.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace xr {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0,1).
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Standard normal via Box-Muller, one value per call.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u <= 0.0) u = u01();
    double v = u01();
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(6.283185307179586476925287 * v);
    have_spare_ = true;
    return r * std::cos(6.283185307179586476925287 * v);
  }

  std::uint64_t bits() { return gen_(); }

  // Uniform integer in [0, m).
  std::uint64_t below(std::uint64_t m) { return gen_() % m; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace xr
