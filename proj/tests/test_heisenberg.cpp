#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "wicklab/errors.h"
#include "wicklab/heisenberg.h"
#include "wicklab/numerics.h"
#include "wicklab/quantize.h"

using namespace wicklab;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double op_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

TEST_CASE("translations: identity, unitarity, vacuum element") {
  const TruncationParams p{1, 40};
  const std::vector<cplx> zero{0.0};
  CHECK(max_abs(translation_op(zero, p).matrix() - FockOperator::identity(p).matrix()) == 0.0);

  const std::vector<cplx> Y{0.3};
  const auto T = translation_op(Y, p);
  SplitMix64 rng(1);
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(41);
  for (int k = 0; k <= 20; ++k) phi(k) = cplx(rng.normal(), rng.normal());
  CHECK(std::abs((T.matrix() * phi).norm() - phi.norm()) < 1e-8 * phi.norm());

  // Integral of exp(i(Y Zbar + Ybar Z) + |Y|^2/2) against nu' by a Cartesian
  // trapezoid on [-8, 8]^2.
  const int M = 400;
  const double h = 16.0 / M;
  cplx acc = 0.0;
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j <= M; ++j) {
      const cplx Z(-8.0 + i * h, -8.0 + j * h);
      const double wt = (i == 0 || i == M ? 0.5 : 1.0) * (j == 0 || j == M ? 0.5 : 1.0);
      acc += wt * std::exp(cplx(0.0, 1.0) * (Y[0] * std::conj(Z) + std::conj(Y[0]) * Z) + 0.5 * std::norm(Y[0]) -
                           std::norm(Z));
    }
  }
  acc *= h * h / std::numbers::pi;
  CHECK(std::abs(T.matrix()(0, 0) - acc) < 1e-10);
}

TEST_CASE("translations match the displaced-Laguerre closed form") {
  const TruncationParams p{1, 40};
  const cplx y(0.3, 0.4);
  const auto T = translation_op(std::vector<cplx>{y}, p).matrix();
  const cplx beta = cplx(0.0, 1.0) * std::conj(y);
  const double x = std::norm(beta);
  for (int m = 0; m <= 20; ++m) {
    for (int n = 0; n <= 20; ++n) {
      cplx d;
      if (m >= n)
        d = std::sqrt(factorial(n) / factorial(m)) * std::pow(beta, m - n) * std::exp(-x / 2) *
            std::assoc_laguerre(unsigned(n), unsigned(m - n), x);
      else
        d = std::sqrt(factorial(m) / factorial(n)) * std::pow(-std::conj(beta), n - m) * std::exp(-x / 2) *
            std::assoc_laguerre(unsigned(m), unsigned(n - m), x);
      CHECK(std::abs(d - T(m, n)) < 1e-13);
    }
  }
}

TEST_CASE("group law and its phase") {
  const TruncationParams p{1, 40};
  const std::vector<cplx> Y1{0.3}, Y2{cplx(0.0, 0.2)}, zero{0.0};
  CHECK(group_law_defect(Y1, Y2, p, 10) <= 1e-6);
  CHECK(group_law_defect(Y1, Y2, p, 10, true) >= 1e-2);

  const auto r0 = compose_translations(Y1, zero, p);
  CHECK(std::abs(r0.phase - 1.0) == 0.0);
  CHECK(max_abs(r0.product.block(20) - translation_op(Y1, p).block(20)) < 1e-12);

  const auto a = compose_translations(Y1, Y2, p), b = compose_translations(Y2, Y1, p);
  CHECK(std::abs(a.phase - std::conj(b.phase)) < 1e-15);
  CHECK(std::abs(symplectic_form(Y1, Y2) + symplectic_form(Y2, Y1)) == 0.0);

  const TruncationParams q{2, 16};
  const std::vector<cplx> Z1{{0.2, -0.3}, {0.1, 0.4}}, Z2{{-0.4, 0.1}, {0.3, 0.2}};
  CHECK(group_law_defect(Z1, Z2, q, 4) <= 1e-6);

  const std::vector<cplx> far{3.0};
  CHECK_THROWS_AS(translation_op(far, p), AccuracyError);
}

TEST_CASE("weighted superpositions") {
  const TruncationParams p{1, 40};
  const auto narrow = weighted_superposition(gaussian_weight(1, {0.0}, 0.02), p);
  CHECK(narrow.converged);
  CHECK(max_abs(narrow.op.block(5) - Eigen::MatrixXcd::Identity(6, 6)) < 1e-2);

  const auto m = gaussian_weight(1, {cplx(0.2, -0.1)}, 0.2, std::polar(0.7, 1.1));
  CHECK(m.l1_bound == doctest::Approx(0.7));
  const auto F = weighted_superposition(m, p);
  CHECK(op_norm(F.op.matrix()) <= 0.7 + 1e-6);

  // Two routes to the anti-Wick quantization of exp(-|Z|^2 / r^2).
  const auto w = gaussian_cutoff_fourier_weight(1, 4.0);
  const auto S = weighted_superposition(w, p);
  const auto B = antiwick_quantize_radial(gaussian_cutoff(1, 4.0), p);
  CHECK(max_abs(S.op.block(15) - B.op.block(15)) < 1e-6);

  // The Hankel-transform weight for a general radial cutoff agrees with the
  // closed form one for the same Gaussian.
  const auto hw = cutoff_fourier_weight(gaussian_cutoff(1, 4.0));
  for (double r : {0.0, 0.3, 0.7, 1.2}) {
    const std::vector<cplx> Yr{cplx(r * 0.6, r * 0.8)};
    CHECK(std::abs(hw(Yr) - w(Yr)) < 1e-8);
  }
}

TEST_CASE("composition of weights") {
  const TruncationParams p{1, 40};
  QuadratureSpec qs;
  qs.max_points = 65;

  const auto c1 = gaussian_weight(1, {0.0}, 0.25), c2 = gaussian_weight(1, {0.0}, 0.25);
  const auto F12 = (weighted_superposition(c1, p, qs).op * weighted_superposition(c2, p, qs).op).block(8);
  const auto F3 = weighted_superposition(compose_weights(c1, c2, qs), p, qs).op.block(8);
  CHECK(max_abs(F12 - F3) <= 1e-4);

  // Off-center weights make m3 genuinely complex, so the phase sign matters.
  const auto m1 = gaussian_weight(1, {0.3}, 0.2), m2 = gaussian_weight(1, {cplx(0.0, 0.2)}, 0.2);
  const auto P12 = (weighted_superposition(m1, p, qs).op * weighted_superposition(m2, p, qs).op).block(8);
  const auto good = weighted_superposition(compose_weights(m1, m2, qs), p, qs).op.block(8);
  const auto bad = weighted_superposition(compose_weights(m1, m2, qs, PhaseMode::flipped), p, qs).op.block(8);
  CHECK(max_abs(P12 - good) <= 1e-4);
  CHECK(max_abs(P12 - bad) >= 1e-2);
}

TEST_CASE("first-order remainder against a calibrated constant") {
  const TruncationParams p{1, 40};
  QuadratureSpec qs;
  qs.max_points = 65;
  const auto a1 = gaussian_weight(1, {0.0}, 0.2), a2 = gaussian_weight(1, {0.0}, 0.2);
  const auto first = first_order_remainder(a1, a2, p, 1.0, qs);
  CHECK(std::isfinite(first.norm));
  const double C = first.norm / first.budget_product;
  const auto b1 = gaussian_weight(1, {0.0}, 0.1), b2 = gaussian_weight(1, {0.0}, 0.1);
  const auto second = first_order_remainder(b1, b2, p, C, qs);
  CHECK(second.budget_product > first.budget_product);
  CHECK(second.norm <= second.bound);
}

TEST_CASE("cutoff norm bounds") {
  CHECK(cutoff_norm_bound(0.4, 2, 1.0).eq_bound == doctest::Approx(0.0064).epsilon(1e-12));
  CHECK(cutoff_norm_bound(0.0, 3, 1.0).eq_bound == 0.0);
  CHECK(cutoff_norm_bound(1e-3, 3, 1.0).eq_bound < 1e-15);
  const double m = measured_cutoff_norm(RadialSymbol::bump(2, 0.32), {2, 20});
  CHECK(m > 0.0);
  CHECK(m <= cutoff_norm_bound(0.4, 2, 1.0).trace_bound);
}

TEST_CASE("zone planner") {
  auto r = zone_planner({10.0, 1e4, 1.0, 1.0, 2.0});
  CHECK(r.ec_e2_disjoint);
  CHECK(r.lhs == doctest::Approx(std::sqrt(10.0)));
  CHECK(r.rhs == doctest::Approx(50.0));
  CHECK_FALSE(zone_planner({100.0, 25.0, 1.0, 1.0, 2.0}).ec_e2_disjoint);
  CHECK_FALSE(zone_planner({1.0, 4.0, 1.0, 1.0, 2.0}).ec_e2_disjoint);
  r = zone_planner({2.0, 100.0, 1.0, 1.0, 2.0});
  CHECK(r.C1 == 4.0);
  CHECK(r.second_regime);
  CHECK_FALSE(zone_planner({50.0, 100.0, 1.0, 1.0, 2.0}).second_regime);
  CHECK_THROWS_AS(zone_planner({0.5, 4.0, 1.0, 1.0, 2.0}), UsageError);
}
