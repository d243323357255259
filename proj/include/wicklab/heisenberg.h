#pragma once

// Phase-space translations and their weighted superpositions.
//
// A phase point Y in C^n is identified with (y, eta) through Y = y + i eta.
// tau_Y is the anti-Wick quantization of exp(i(Y.Zbar + Ybar.Z) + |Y|^2/2),
// i.e. the displacement operator D(beta) with beta = i conj(Y). With
//   sigma(Y1, Y2) = eta1 . y2 - y1 . eta2
// the group law reads tau_{Y1} tau_{Y2} = exp(-i sigma(Y1, Y2)) tau_{Y1+Y2}.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wicklab/fock.h"
#include "wicklab/radial.h"

namespace wicklab {

using PhasePoint = std::vector<cplx>;

double symplectic_form(std::span<const cplx> y1, std::span<const cplx> y2);

// Truncated tau_Y. Each one-dimensional factor is the Gaussian-moment series
//   e^{|y|^2/2} sum_g (i conj y)^g (i y)^{g+a-b} (g+a)! / (g! (g+a-b)! sqrt(a! b!))
// summed until the remaining tail is below 1e-17 relative. Throws
// AccuracyError when |Y|^2 > N / 8.
FockOperator translation_op(std::span<const cplx> Y, const TruncationParams& params);

struct TranslationProduct {
  FockOperator product;   // tau_{Y1} tau_{Y2}
  FockOperator combined;  // tau_{Y1 + Y2}
  cplx phase;             // exp(-i sigma(Y1, Y2)), or its conjugate when flipped
};
TranslationProduct compose_translations(std::span<const cplx> Y1, std::span<const cplx> Y2,
                                        const TruncationParams& params, bool flip_sigma = false);
// max |tau_{Y1} tau_{Y2} - phase tau_{Y1+Y2}| over the degree <= block
// sub-block.
double group_law_defect(std::span<const cplx> Y1, std::span<const cplx> Y2, const TruncationParams& params,
                        int block, bool flip_sigma = false);

enum class WeightKind { gaussian, cutoff_fourier, sampled, custom };
const char* to_string(WeightKind kind);

struct TranslationWeight {
  int n = 1;
  WeightKind kind = WeightKind::custom;
  std::function<cplx(std::span<const cplx>)> m;
  double l1_bound = 0.0;       // integral of |m| dY (Lebesgue on R^{2n})
  double grad_l1_bound = 0.0;  // integral of |grad m| dY
  PhasePoint center;
  double scale = 1.0;           // standard deviation per real coordinate (Gaussian tags)
  double support_radius = 0.0;  // |Y - center| beyond which m is treated as zero
  cplx mass = 1.0;

  cplx operator()(std::span<const cplx> Y) const { return m(Y); }
};

// mass (2 pi w^2)^{-n} exp(-|Y - c|^2 / (2 w^2)); support radius 6 w.
TranslationWeight gaussian_weight(int n, const PhasePoint& center, double width, cplx mass = 1.0);

// m(Y) = exp(-|Y|^2/2) pi^{-2n} chi~(Y), with chi~(Y) the Fourier transform
// integral chi(Z) exp(-i(Y.Zbar + Ybar.Z)) dZ. Then the superposition of tau_Y
// against m is the anti-Wick quantization of chi. The radial transform uses
// a Hankel integral on the support of chi.
TranslationWeight cutoff_fourier_weight(const RadialSymbol& chi);
// chi = exp(-|Z|^2 / r^2): chi~ = (pi r^2)^n exp(-r^2 |Y|^2), so m is a
// Gaussian of variance 1/(1 + 2 r^2) and mass (r^2 / (1/2 + r^2))^n.
TranslationWeight gaussian_cutoff_fourier_weight(int n, double r2);
RadialSymbol gaussian_cutoff(int n, double r2);

struct QuadratureSpec {
  int points = 33;       // per real axis, first level
  int max_points = 129;  // refinement cap
  double tol = 1e-8;     // entrywise agreement of two levels
};

struct SuperpositionResult {
  FockOperator op;
  bool converged = false;
  double last_change = 0.0;
  int points = 0;
  double quadrature_weight_l1 = 0.0;  // sum of |m| times cell volume
};

// F = integral of tau_Y m(Y) dY by a tensor trapezoid on the box of half
// width support_radius around the center (points outside the ball are
// skipped). Levels double (2p - 1 points) until two agree to tol. Every node
// must satisfy |Y|^2 <= N / 8.
SuperpositionResult weighted_superposition(const TranslationWeight& w, const TruncationParams& params,
                                           const QuadratureSpec& spec = {});

enum class PhaseMode { adopted, flipped, none };

// m3(Y3) = integral m1(Y3/2 + Y4) m2(Y3/2 - Y4) exp(i sigma(Y3, Y4)) dY4,
// sampled on a grid with bicubic interpolation (n = 1), evaluated on demand
// otherwise (n = 2). PhaseMode::none drops the oscillating factor.
TranslationWeight compose_weights(const TranslationWeight& m1, const TranslationWeight& m2,
                                  const QuadratureSpec& spec = {}, PhaseMode phase = PhaseMode::adopted);

// (integral |grad m| + integral |m|) for the weight.
double weight_budget(const TranslationWeight& w);

struct RemainderResult {
  FockOperator remainder;  // F(m1) F(m2) - F(m3 without the phase)
  double norm = 0.0;       // F^0 -> F^1 on the degree <= N/2 block
  double budget_product = 0.0;
  double bound = 0.0;      // constant * budget_product
};
RemainderResult first_order_remainder(const TranslationWeight& m1, const TranslationWeight& m2,
                                      const TruncationParams& params, double constant,
                                      const QuadratureSpec& spec = {});

struct CutoffBound {
  double eq_bound;        // R^{2n} Omega / (2n 2^n pi^n) sup|chi|, Omega = pi^n / Gamma(n), R = rho sqrt(n)
  double trace_bound;     // sup|chi| R^{2n} / n!, the largest radial eigenvalue bound
  double stirling_bound;  // e^n rho^{2n} sup|chi|
};
CutoffBound cutoff_norm_bound(double rho, int n, double sup_bound);
// Operator norm of the anti-Wick quantization of a radial cutoff (max |lambda_k|).
double measured_cutoff_norm(const RadialSymbol& chi, const TruncationParams& params, double tol = 1e-10);

struct ZoneConfig {
  double lambda = 1.0;  // Lambda >= 1
  double d = 1.0;       // d >= 1
  double C = 1.0;
  double c0 = 1.0;
  double C0 = 2.0;

  void validate() const;
};

struct RadiusInterval {
  double lo = 0.0;
  double hi = 0.0;  // +inf for an unbounded zone
};

struct ZoneReport {
  bool ec_e2_disjoint = false;  // C Lambda^{1/2} < c0 d^{1/2} / 2, strict
  bool second_regime = false;   // Lambda / d <= 1 / C1 with C1 = 4 C^2 / c0^2
  double lhs = 0.0;
  double rhs = 0.0;
  double C1 = 0.0;
  RadiusInterval e3;  // [0, c0 sqrt d]
  RadiusInterval e2;  // [c0 sqrt d, C0 sqrt d]
  RadiusInterval ei;  // [C0 sqrt d, inf)
  RadiusInterval ec;  // [0, C sqrt Lambda]
  bool ec_meets_e3 = true;
  bool ec_meets_e2 = false;
  bool ec_meets_ei = false;
};
ZoneReport zone_planner(const ZoneConfig& cfg);

}  // namespace wicklab
