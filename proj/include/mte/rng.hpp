#pragma once

#include <cmath>
#include <cstdint>

// Counter-based generator used everywhere randomness is needed, so that
// every draw is reproducible from (seed, rep, stream) across platforms.
// std::mt19937 + std::*_distribution would tie results to the standard
// library implementation; these routines are pinned by value instead.

namespace mte {

// splitmix64 (Steele, Lea, Flood 2014 / Vigna). Full 2^64 period, passes
// BigCrush, two multiplies and three xor-shifts per draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // strictly (0, 1); safe to feed inverse CDFs with poles at the ends
  double uniform_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller, cosine branch only; two uniforms per normal, no cached spare,
  // so the draw count per call is fixed.
  double normal() {
    double u1 = uniform_open01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double cauchy() { return std::tan(M_PI * (uniform_open01() - 0.5)); }

  // Student t with 2 df by inverting F(x) = 1/2 + x / (2 sqrt(x^2+2))
  double t2() {
    double a = 2.0 * uniform_open01() - 1.0;
    return a * std::sqrt(2.0 / (1.0 - a * a));
  }

 private:
  std::uint64_t state_;
};

// Derive independent stream seeds from (seed, rep, stream) by running the
// splitmix64 output function over the concatenated words.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  Rng r(seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xd1b54a32d192ed03ULL));
  r.next_u64();
  return r.next_u64();
}

}  // namespace mte
