#include "wicklab/numerics.h"

#include <array>
#include <cmath>
#include <limits>

namespace wicklab {

namespace {

constexpr int kTableSize = 171;

const std::array<double, kTableSize>& factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 1.0;
    for (int k = 1; k < kTableSize; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  return table;
}

}  // namespace

double factorial(int k) {
  if (k < 0) return 0.0;
  if (k < kTableSize) return factorial_table()[k];
  return std::numeric_limits<double>::infinity();
}

double log_factorial(int k) {
  if (k < 0) return -std::numeric_limits<double>::infinity();
  if (k < kTableSize) return std::log(factorial_table()[k]);
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n < kTableSize) return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
  return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int SplitMix64::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

double SplitMix64::normal() {
  // Box-Muller with an explicit uniform keeps the stream portable.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace wicklab
