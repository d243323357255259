#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "wicklab/errors.h"
#include "wicklab/numerics.h"
#include "wicklab/quantize.h"
#include "wicklab/symbols.h"

using namespace wicklab;

namespace {

PolySymbol P(const char* s, int n = 0) { return parse_symbol(s, n); }

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double max_coeff_diff(const PolySymbol& a, const PolySymbol& b) {
  double m = 0.0;
  const PolySymbol d = a - b;
  for (const auto& [k, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("anti-wick quantization of polynomials") {
  const TruncationParams p{2, 5};
  CHECK(max_abs(antiwick_quantize_poly(PolySymbol::constant(2, 1.0), p).op.matrix() -
                FockOperator::identity(p).matrix()) == 0.0);

  for (int n = 1; n <= 3; ++n) {
    const TruncationParams q{n, 4};
    const auto r = antiwick_quantize_poly(PolySymbol::norm_squared(n), q);
    const Eigen::MatrixXcd expect =
        number_operator(q).matrix() + double(n) * Eigen::MatrixXcd::Identity(Eigen::Index(q.basis_size()), Eigen::Index(q.basis_size()));
    CHECK(max_abs(r.op.matrix() - expect) == 0.0);
    CHECK(r.exactness.kind == ExactnessKind::exact);
  }

  const TruncationParams q{1, 6};
  const auto z = antiwick_quantize_poly(P("z^[1]"), q);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(z.op.matrix()(k + 1, k) - std::sqrt(k + 1.0)) < 1e-15);
  CHECK(z.exactness.kind == ExactnessKind::safe_block);
  CHECK(z.exactness.safe_degree == 5);
}

TEST_CASE("radial quantization") {
  const TruncationParams p{1, 10};
  const auto one = antiwick_quantize_radial(RadialSymbol::custom(1, [](double) { return 1.0; }, std::nullopt, 1.0), p);
  CHECK(max_abs(one.op.matrix() - FockOperator::identity(p).matrix()) < 1e-12);

  const auto t = antiwick_quantize_radial(RadialSymbol::custom(1, [](double s) { return s; }, std::nullopt, 0.0), p);
  CHECK(max_abs(t.op.matrix() - antiwick_quantize_poly(PolySymbol::norm_squared(1), p).op.matrix()) < 1e-10);

  // lambda_0 of sqrt(t + 2) at n = 2 against a composite Simpson rule on the
  // Gamma(2) density, truncated at t = 60.
  const auto spec = radial_spectrum(RadialSymbol::power(2, 1.0), 0);
  double simpson = 0.0;
  const int M = 20000;
  const double h = 60.0 / M;
  for (int i = 0; i <= M; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i == M) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    simpson += w * std::sqrt(x + 2.0) * x * std::exp(-x);
  }
  simpson *= h / 3.0;
  CHECK(std::abs(spec.eigenvalues[0] - simpson) < 1e-6);

  // The same matrix element as a 4-dimensional Monte-Carlo integral of
  // sqrt(|z|^2 + 2) against nu' (variance 1/2 per real coordinate).
  SplitMix64 rng(2024);
  double mc = 0.0;
  const int S = 400000;
  for (int i = 0; i < S; ++i) {
    double t2 = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double g = rng.normal() * std::sqrt(0.5);
      t2 += g * g;
    }
    mc += std::sqrt(t2 + 2.0);
  }
  mc /= S;
  CHECK(std::abs(spec.eigenvalues[0] - mc) < 5e-3);
}

TEST_CASE("wick symbols of operators") {
  const TruncationParams p{1, 30};
  const std::vector<cplx> z{{0.8, -0.5}};
  CHECK(std::abs(wick_symbol_of(FockOperator::identity(p), z).value - 1.0) < 1e-10);
  CHECK(std::abs(wick_symbol_of(number_operator(p), z).value - std::norm(z[0])) < 1e-10);
  const std::vector<cplx> far{4.0};
  CHECK(wick_symbol_of(number_operator(p), far).radius_exceeded);

  SplitMix64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    PolySymbol b(n);
    for (int k = 0; k < 3; ++k) {
      const auto A = indices_of_degree(n, rng.uniform_int(0, 2));
      const auto B = indices_of_degree(n, rng.uniform_int(0, 2));
      b.add_term(A[std::size_t(rng.uniform_int(0, int(A.size()) - 1))],
                 B[std::size_t(rng.uniform_int(0, int(B.size()) - 1))], cplx(rng.normal(), rng.normal()));
    }
    const auto op = antiwick_quantize_poly(b, {n, 10}).op;
    CHECK(max_coeff_diff(wick_symbol_poly(op, 4), wick_transform(b)) < 1e-9);
  }
}

TEST_CASE("ladder operators") {
  const TruncationParams p{1, 8};
  const auto a = annihilation_op(1, p).ops[0];
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(a.matrix()(k - 1, k) - std::sqrt(double(k))) < 1e-15);
  CHECK(max_abs(a.matrix().col(0)) == 0.0);
  CHECK(max_abs((a.adjoint() * a).matrix() - number_operator(p).matrix()) < 1e-13);

  const TruncationParams q{2, 6};
  const auto fam = annihilation_op(2, q);
  CHECK(fam.ops.size() == 3);
  const auto cre = creation_op(2, q);
  for (std::size_t i = 0; i < 3; ++i) CHECK(max_abs(cre.ops[i].matrix() - fam.ops[i].matrix().adjoint()) == 0.0);
  CHECK_THROWS_AS(annihilation_op(7, q), UsageError);
}

TEST_CASE("harmonic oscillators") {
  const TruncationParams p{3, 4};
  OscillatorCoefficients c;
  c[{1, 1}] = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(max_abs(harmonic_oscillator(c, p).matrix() - number_operator(p).matrix()) < 1e-14);

  OscillatorCoefficients d;
  Eigen::MatrixXcd lam = Eigen::MatrixXcd::Zero(3, 3);
  lam(0, 0) = 1.0, lam(1, 1) = 2.0, lam(2, 2) = -0.5;
  d[{1, 1}] = lam;
  const auto A = harmonic_oscillator(d, {3, 20});
  const std::vector<cplx> z{{0.3, 0.1}, {-0.2, 0.4}, {0.5, 0.0}};
  const double expect = std::norm(z[0]) + 2.0 * std::norm(z[1]) - 0.5 * std::norm(z[2]);
  CHECK(std::abs(wick_symbol_of(A, z).value - expect) < 1e-10);

  OscillatorCoefficients e;
  e[{0, 0}] = Eigen::MatrixXcd::Constant(1, 1, cplx(2.5));
  CHECK(max_abs(harmonic_oscillator(e, p).matrix() - 2.5 * FockOperator::identity(p).matrix()) < 1e-15);

  OscillatorCoefficients bad;
  bad[{1, 1}] = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(harmonic_oscillator(bad, p), UsageError);

  // Order 2 oscillator: F^s -> F^{s-2} bounded, norm grows without the shift.
  const auto N = number_operator({2, 12});
  CHECK(sobolev_operator_norm(N, 1.0, -1.0) <= 1.0 + 1e-12);
}

TEST_CASE("wick to anti-wick through traces") {
  for (int n = 1; n <= 4; ++n) {
    const auto r = antiwick_from_wick_traces(PolySymbol::norm_squared(n));
    CHECK(r.antiwick == PolySymbol::norm_squared(n) - PolySymbol::constant(n, double(n)));
  }
  const PolySymbol s2 = PolySymbol::norm_squared(4) * PolySymbol::norm_squared(4);
  const auto r = antiwick_from_wick_traces(s2);
  CHECK(r.antiwick == antiwick_transform(s2));
  const std::vector<cplx> z(4, cplx(1.0));  // |z| = 2
  // tau = 1 term is -(2n + 2)|z|^2 for |z|^4; of size n |z|^2 = 16 up to the factor 2 + 2/n.
  CHECK(std::abs(evaluate(r.terms[1], z) + 40.0) < 1e-12);
  const auto h = P("z^[2,1,0,0] + 3*z^[0,0,0,1]");
  CHECK(antiwick_from_wick_traces(h).antiwick == h);
}

TEST_CASE("hilbert-schmidt norms") {
  CHECK(hs_norm(FockOperator::identity({1, 2})) == doctest::Approx(std::sqrt(3.0)));
  const auto d = antiwick_quantize_poly(PolySymbol::norm_squared(1), {1, 2}).op;
  CHECK(hs_norm(d) == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));
  const auto bump = RadialSymbol::bump(1, 0.25);
  const TruncationParams p{1, 40};
  CHECK(std::abs(hs_norm_radial(bump, p) - hs_norm(antiwick_quantize_radial(bump, p).op)) < 1e-10);
}

TEST_CASE("sobolev operator norms") {
  const TruncationParams p{1, 30};
  CHECK(sobolev_operator_norm(FockOperator::identity(p), 0.7, 0.7) == doctest::Approx(1.0));
  const auto a = annihilation_op(1, p).ops[0];
  CHECK(std::abs(sobolev_operator_norm(a, 0.0, -1.0) - 1.0) < 1e-12);
  CHECK(std::abs(sobolev_operator_norm(a, 1.0, 0.0) - std::sqrt(30.0 / 31.0)) < 1e-12);
}

TEST_CASE("positivity, norm domination and hermiticity") {
  SplitMix64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 3;
    const TruncationParams p{n, n == 3 ? 6 : 8};
    PolySymbol q(n);
    for (int k = 0; k < 3; ++k) {
      const auto A = indices_of_degree(n, rng.uniform_int(0, 2));
      const auto B = indices_of_degree(n, rng.uniform_int(0, 1));
      q.add_term(A[std::size_t(rng.uniform_int(0, int(A.size()) - 1))],
                 B[std::size_t(rng.uniform_int(0, int(B.size()) - 1))], cplx(rng.normal(), rng.normal()));
    }
    const auto M = antiwick_quantize_poly(q * q.conj(), p).op.matrix();
    CHECK(max_abs(M - M.adjoint()) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
  const auto b = RadialSymbol::custom(2, [](double s) { return 0.6 + 0.4 * std::cos(3.0 * s); }, std::nullopt, 1.0);
  const auto R = antiwick_quantize_radial(b, {2, 10}).op.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(R, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(es.eigenvalues().cwiseAbs().maxCoeff() <= 1.0 + 1e-10);
}
