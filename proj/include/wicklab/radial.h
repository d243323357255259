#pragma once

// Symbols that depend on z only through t = |z|^2.

#include <functional>
#include <optional>
#include <string>

namespace wicklab {

enum class RadialKind { power, bump, custom };

struct RadialSymbol {
  int n = 1;
  std::function<double(double)> profile;  // b(t), t = |z|^2
  std::optional<double> support;          // b(t) = 0 for t >= support
  double sup_bound = 0.0;                 // dominates |b| on the support
  RadialKind kind = RadialKind::custom;
  double theta = 0.0;  // exponent of the power family
  std::string label;

  double operator()(double t) const { return profile(t); }

  // (t + n)^{theta/2}; sup_bound is only meaningful for theta <= 0.
  static RadialSymbol power(int n, double theta);
  // exp(1 - 1/(1 - t/T)) for t < T, zero beyond: smooth, equal to 1 at the
  // origin, supported in |z| < sqrt(T).
  static RadialSymbol bump(int n, double support_t, double height = 1.0);
  static RadialSymbol custom(int n, std::function<double(double)> profile, std::optional<double> support,
                             double sup_bound, std::string label = "custom");

  // Samples the profile and confirms |b| <= sup_bound (with relative slack)
  // and b = 0 beyond the declared support.
  bool spot_check(int samples = 257, double slack = 1e-12) const;
};

const char* to_string(RadialKind kind);

}  // namespace wicklab
