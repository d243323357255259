#include "doctest.h"

#include <cmath>

#include "wicklab/errors.h"
#include "wicklab/numerics.h"
#include "wicklab/symbols.h"

using namespace wicklab;

namespace {

PolySymbol P(const char* s, int n = 0) { return parse_symbol(s, n); }

MultiIndex I(std::initializer_list<int> e) { return MultiIndex(std::vector<int>(e)); }

// Test-side moment: integral of w^a wbar^b dnu' = delta_ab a!.
double moment(const MultiIndex& a, const MultiIndex& b) {
  if (!(a == b)) return 0.0;
  double f = 1.0;
  for (int j = 0; j < a.dim(); ++j) f *= factorial(a[j]);
  return f;
}

cplx inner(const PolySymbol& f, const PolySymbol& g) {
  cplx s = 0.0;
  for (const auto& [kf, cf] : f.terms())
    for (const auto& [kg, cg] : g.terms()) s += cf * std::conj(cg) * moment(kf.alpha + kg.beta, kf.beta + kg.alpha);
  return s;
}

double max_coeff_diff(const PolySymbol& a, const PolySymbol& b) {
  double m = 0.0;
  const PolySymbol d = a - b;
  for (const auto& [k, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

TEST_CASE("hermite polynomials") {
  CHECK(hermite_poly(0, 0) == PolySymbol::constant(1, 1.0));
  CHECK(hermite_poly(1, 1) == P("z^[1]*zbar^[1] - 1"));
  CHECK(hermite_poly(2, 1) == P("z^[2]*zbar^[1] - 2*z^[1]"));
  const auto h11 = hermite_normalized(I({1}), I({1}));
  const auto h22 = hermite_normalized(I({2}), I({2}));
  CHECK(std::abs(inner(h11, h22)) < 1e-15);
  CHECK(std::abs(inner(h11, h11) - 1.0) < 1e-15);
  CHECK(std::abs(l2_inner(h11, h11) - 1.0) < 1e-15);
}

TEST_CASE("hermite generating function") {
  // exp(-|z+w|^2) e^{|w|^2} = sum (-1)^{k+l} zbar^k z^l / (k! l!) script-H_{k,l}(w, wbar),
  // checked pointwise with the sum truncated at k, l <= 30.
  const cplx z(0.3, -0.2), w(0.5, 0.4);
  cplx total = 0.0;
  for (int k = 0; k <= 30; ++k) {
    for (int l = 0; l <= 30; ++l) {
      const std::vector<cplx> ww{w};
      const double sign = ((k + l) % 2) ? -1.0 : 1.0;
      total += sign * std::pow(std::conj(z), k) * std::pow(z, l) / (factorial(k) * factorial(l)) *
               evaluate(hermite_poly(k, l), ww);
    }
  }
  const double expected = std::exp(-std::norm(z + w) + std::norm(w));
  CHECK(std::abs(total - expected) < 1e-12);
}

TEST_CASE("wick and anti-wick transforms") {
  CHECK(wick_transform(P("z^[1]*zbar^[1]")) == P("z^[1]*zbar^[1] + 1"));
  CHECK(wick_transform(P("z^[2]*zbar^[2]")) == P("z^[2]*zbar^[2] + 4*z^[1]*zbar^[1] + 2"));
  CHECK(wick_transform(P("3*z^[2,1]", 2)) == P("3*z^[2,1]"));
  CHECK(antiwick_transform(P("z^[1]*zbar^[1] + 1")) == P("z^[1]*zbar^[1]"));
  CHECK(antiwick_transform(P("z^[2]*zbar^[2]")) == P("z^[2]*zbar^[2] - 4*z^[1]*zbar^[1] + 2"));
  const auto f = P("z^[3]*zbar^[2]");
  CHECK(antiwick_transform(wick_transform(f)) == f);
  CHECK(wick_transform(PolySymbol::norm_squared(3)) == PolySymbol::norm_squared(3) + PolySymbol::constant(3, 3.0));
}

TEST_CASE("transform round trip in exact arithmetic") {
  for (int n = 1; n <= 2; ++n) {
    for (int d = 0; d <= 10; ++d) {
      for (int p = 0; p <= d; ++p) {
        for (const auto& a : indices_of_degree(n, p)) {
          for (const auto& b : indices_of_degree(n, d - p)) {
            const ExactSymbol m = ExactSymbol::monomial(a, b);
            CHECK(antiwick_transform(wick_transform(m)) == m);
            CHECK(wick_transform(antiwick_transform(m)) == m);
          }
        }
      }
    }
  }
}

TEST_CASE("isometry of the bi-holomorphic extension") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 2;
    PolySymbol f(n);
    for (int t = 0; t < 6; ++t) {
      const int da = rng.uniform_int(0, 3), db = rng.uniform_int(0, 3);
      const auto A = indices_of_degree(n, da), B = indices_of_degree(n, db);
      const auto& a = A[std::size_t(rng.uniform_int(0, int(A.size()) - 1))];
      const auto& b = B[std::size_t(rng.uniform_int(0, int(B.size()) - 1))];
      const cplx c(rng.normal(), rng.normal());
      f.add_term(a, b, c);
      f.add_term(b, a, std::conj(c));
    }
    REQUIRE(is_real(f));
    const PolySymbol g = wick_transform(f);
    CHECK(is_real(g, 1e-14));
    double lhs = 0.0;
    for (const auto& [k1, c1] : g.terms())
      for (const auto& [k2, c2] : g.terms())
        lhs += (c1 * std::conj(c2)).real() * moment(k1.alpha, k2.alpha) * moment(k2.beta, k1.beta);
    const double rhs = inner(f, f).real();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
  }
}

TEST_CASE("derivative tensors and trace contractions") {
  const auto t = differentiate(P("z^[1,0]*zbar^[0,1]"), 1, 1);
  CHECK(t.entries.size() == 1);
  CHECK(t.at({0}, {1}) == PolySymbol::constant(2, 1.0));
  CHECK(differentiate(PolySymbol::norm_squared(2), 1, 1).trace() == PolySymbol::constant(2, 2.0));
  CHECK(trace_contract(P("z^[2]*zbar^[2]"), 2) == PolySymbol::constant(1, 4.0));
  CHECK(derivative(P("z^[3]*zbar^[2]"), I({1}), I({2})) == P("6*z^[2]"));
}

TEST_CASE("composition series witnesses") {
  CHECK(compose_antiwick(P("zbar^[1]"), P("z^[1]")) == P("z^[1]*zbar^[1]"));
  CHECK(compose_antiwick(P("z^[1]"), P("zbar^[1]")) == P("z^[1]*zbar^[1] - 1"));
  const auto a = P("2*z^[2]*zbar^[1] + (1-2i)*zbar^[3]");
  CHECK(compose_antiwick(PolySymbol::constant(1, 1.0), a) == a);
}

TEST_CASE("bergman projection") {
  CHECK(bergman_project(P("z^[2]*zbar^[1]")) == P("2*z^[1]"));
  CHECK(bergman_project(P("z^[1]*zbar^[2]")).empty());
  const auto h = P("z^[1,2] + 3*z^[0,1]");
  CHECK(bergman_project(h) == h);
}

TEST_CASE("parse and format") {
  const auto p = P("1.0 * z^[2,0] * zbar^[0,1]");
  CHECK(p.n() == 2);
  CHECK(p.coefficient(I({2, 0}), I({0, 1})) == cplx(1.0));
  CHECK(format_symbol(P("z^[1]*zbar^[1] + 1")) == "1*z^[1]*zbar^[1] + 1");
  CHECK(format_symbol(PolySymbol(1)) == "0");
  SplitMix64 rng(3);
  for (int t = 0; t < 50; ++t) {
    PolySymbol f(2);
    for (int k = 0; k < 4; ++k) {
      const auto A = indices_of_degree(2, rng.uniform_int(0, 3));
      const auto B = indices_of_degree(2, rng.uniform_int(0, 3));
      f.add_term(A[std::size_t(rng.uniform_int(0, int(A.size()) - 1))],
                 B[std::size_t(rng.uniform_int(0, int(B.size()) - 1))], cplx(rng.normal(), rng.normal()));
    }
    CHECK(parse_symbol(format_symbol(f), 2) == f);
  }
  CHECK_THROWS_AS(P("z^[1"), UsageError);
  CHECK_THROWS_AS(P("z^[1,0]*zbar^[1]"), UsageError);
}

TEST_CASE("hermite expansion of sampled functions") {
  const auto one = hermite_expand([](std::span<const cplx>) { return cplx(1.0); }, 1, 4);
  CHECK(one.converged);
  CHECK(std::abs(one.coefficient(I({0}), I({0})) - 1.0) < 1e-12);
  for (const auto& [k, c] : one.coeffs) {
    if (k.alpha.degree() + k.beta.degree() > 0) CHECK(std::abs(c) < 1e-12);
  }

  const auto sq = hermite_expand([](std::span<const cplx> w) { return cplx(std::norm(w[0])); }, 1, 4);
  CHECK(max_coeff_diff(sq.wick_reconstruction(), wick_transform(PolySymbol::norm_squared(1))) < 1e-10);

  const PolySymbol h21 = hermite_normalized(I({2}), I({1}));
  const auto e = hermite_expand([&](std::span<const cplx> w) { return evaluate(h21, w); }, 1, 5);
  for (const auto& [k, c] : e.coeffs) {
    const bool target = k.alpha == I({2}) && k.beta == I({1});
    CHECK(std::abs(c - (target ? 1.0 : 0.0)) < 1e-8);
  }
}
