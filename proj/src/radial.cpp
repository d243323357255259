#include "wicklab/radial.h"

#include <cmath>
#include <limits>

#include "wicklab/errors.h"

namespace wicklab {

RadialSymbol RadialSymbol::power(int n, double theta) {
  if (n < 1) throw UsageError("dimension n must be >= 1");
  RadialSymbol s;
  s.n = n;
  s.kind = RadialKind::power;
  s.theta = theta;
  const double shift = n;
  s.profile = [shift, theta](double t) { return std::pow(t + shift, 0.5 * theta); };
  s.sup_bound = theta <= 0.0 ? std::pow(shift, 0.5 * theta) : std::numeric_limits<double>::infinity();
  s.label = "(t+n)^(theta/2)";
  return s;
}

RadialSymbol RadialSymbol::bump(int n, double support_t, double height) {
  if (n < 1) throw UsageError("dimension n must be >= 1");
  if (!(support_t > 0.0)) throw UsageError("bump support must be positive");
  RadialSymbol s;
  s.n = n;
  s.kind = RadialKind::bump;
  s.support = support_t;
  s.sup_bound = std::abs(height);
  s.profile = [support_t, height](double t) {
    if (t < 0.0 || t >= support_t) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - t / support_t));
  };
  s.label = "bump";
  return s;
}

RadialSymbol RadialSymbol::custom(int n, std::function<double(double)> profile, std::optional<double> support,
                                  double sup_bound, std::string label) {
  if (n < 1) throw UsageError("dimension n must be >= 1");
  RadialSymbol s;
  s.n = n;
  s.profile = std::move(profile);
  s.support = support;
  s.sup_bound = sup_bound;
  s.label = std::move(label);
  return s;
}

bool RadialSymbol::spot_check(int samples, double slack) const {
  const double span = support ? *support : 8.0 * (n + 4);
  for (int i = 0; i < samples; ++i) {
    const double t = span * i / (samples - 1.0);
    const double v = std::abs(profile(t));
    if (support && t >= *support) {
      if (v != 0.0) return false;
      continue;
    }
    if (v > sup_bound * (1.0 + slack)) return false;
  }
  if (support) {
    for (double f : {1.0, 1.5, 4.0}) {
      if (profile(*support * f) != 0.0) return false;
    }
  }
  return true;
}

const char* to_string(RadialKind kind) {
  switch (kind) {
    case RadialKind::power:
      return "power";
    case RadialKind::bump:
      return "bump";
    case RadialKind::custom:
      return "custom";
  }
  return "custom";
}

}  // namespace wicklab
