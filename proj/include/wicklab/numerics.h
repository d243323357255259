#pragma once

#include <cstdint>
#include <vector>

namespace wicklab {

// k! as a double. Exact for k <= 22, correctly accumulated up to 170,
// +inf above (use log_factorial there).
double factorial(int k);

// log(k!), table-backed below 171 and lgamma above.
double log_factorial(int k);

// Binomial coefficient C(n, k) in floating point; 0 when k < 0 or k > n.
double binomial(int n, int k);

// Exact binomial for the small arguments used in basis counting.
std::uint64_t binomial_u64(int n, int k);

// Portable uniform draw in [0, 1) from a 64-bit generator output. The
// standard distributions are implementation-defined, so reports built on
// them would not be byte-stable across toolchains.
double to_unit_interval(std::uint64_t bits);

// Small deterministic generator (splitmix64) used for all randomized
// experiments and property tests.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double uniform() { return to_unit_interval(next()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);  // inclusive bounds
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace wicklab
