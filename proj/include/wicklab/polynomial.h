#pragma once

// Finite polynomials in (z, zbar) on C^n: sum of c_{alpha,beta} z^alpha zbar^beta.
//
// BasicPolySymbol is templated on the coefficient type so the transforms can
// run in exact rational arithmetic (ExactSymbol) as well as in double
// precision (PolySymbol).

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "wicklab/errors.h"
#include "wicklab/fock.h"

namespace wicklab {

using Rational = boost::multiprecision::cpp_rational;

struct ExactComplex {
  Rational re;
  Rational im;

  ExactComplex() = default;
  ExactComplex(Rational r) : re(std::move(r)) {}  // NOLINT: implicit on purpose
  ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ExactComplex(int v) : re(v) {}  // NOLINT

  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ExactComplex& operator+=(const ExactComplex& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
};

template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<cplx> {
  static bool is_zero(const cplx& c) { return c == cplx{}; }
  static cplx ratio(long long num, long long den) {
    return cplx(static_cast<double>(num) / static_cast<double>(den), 0.0);
  }
  static cplx conj(const cplx& c) { return std::conj(c); }
  static cplx to_complex(const cplx& c) { return c; }
};

template <>
struct ScalarOps<ExactComplex> {
  static bool is_zero(const ExactComplex& c) { return c.re == 0 && c.im == 0; }
  static ExactComplex ratio(long long num, long long den) { return ExactComplex(Rational(num, den)); }
  static ExactComplex conj(const ExactComplex& c) { return {c.re, -c.im}; }
  static cplx to_complex(const ExactComplex& c) {
    return {c.re.convert_to<double>(), c.im.convert_to<double>()};
  }
};

// Monomial key z^alpha zbar^beta. Ordered by total degree, then alpha, then beta.
struct TermKey {
  MultiIndex alpha;
  MultiIndex beta;

  int degree() const { return alpha.degree() + beta.degree(); }
  // Net change of holomorphic degree, |alpha| - |beta|.
  int shift() const { return alpha.degree() - beta.degree(); }

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (auto c = a.alpha <=> b.alpha; c != 0) return c < 0;
    return (a.beta <=> b.beta) < 0;
  }
};

template <class Scalar>
class BasicPolySymbol {
 public:
  using Ops = ScalarOps<Scalar>;
  using TermMap = std::map<TermKey, Scalar>;

  BasicPolySymbol() = default;
  explicit BasicPolySymbol(int n) : n_(n) {
    if (n < 1) throw UsageError("symbol dimension must be >= 1");
  }

  static BasicPolySymbol constant(int n, const Scalar& c) {
    BasicPolySymbol p(n);
    p.add_term(MultiIndex::zero(n), MultiIndex::zero(n), c);
    return p;
  }
  static BasicPolySymbol monomial(const MultiIndex& alpha, const MultiIndex& beta, const Scalar& c = Scalar(1)) {
    BasicPolySymbol p(alpha.dim());
    p.add_term(alpha, beta, c);
    return p;
  }
  // |z|^2 = sum_j z_j zbar_j.
  static BasicPolySymbol norm_squared(int n) {
    BasicPolySymbol p(n);
    for (int j = 0; j < n; ++j) p.add_term(MultiIndex::unit(n, j), MultiIndex::unit(n, j), Scalar(1));
    return p;
  }

  int n() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const MultiIndex& alpha, const MultiIndex& beta, const Scalar& c) {
    if (alpha.dim() != n_ || beta.dim() != n_) throw UsageError("term dimension does not match the symbol");
    if (Ops::is_zero(c)) return;
    TermKey key{alpha, beta};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), c);
      return;
    }
    it->second += c;
    if (Ops::is_zero(it->second)) terms_.erase(it);
  }

  Scalar coefficient(const MultiIndex& alpha, const MultiIndex& beta) const {
    auto it = terms_.find(TermKey{alpha, beta});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
  int holo_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.alpha.degree());
    return d;
  }
  int antiholo_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.beta.degree());
    return d;
  }
  bool is_holomorphic() const {
    for (const auto& [k, c] : terms_) {
      if (k.beta.degree() != 0) return false;
    }
    return true;
  }
  // Range of |alpha| - |beta| over the terms; {0, 0} for the zero symbol.
  DegreeShift shift_range() const {
    if (terms_.empty()) return {0, 0};
    DegreeShift s{terms_.begin()->first.shift(), terms_.begin()->first.shift()};
    for (const auto& [k, c] : terms_) {
      s.min = std::min(s.min, k.shift());
      s.max = std::max(s.max, k.shift());
    }
    return s;
  }

  // Pointwise complex conjugate: c z^a zbar^b -> conj(c) z^b zbar^a.
  BasicPolySymbol conj() const {
    BasicPolySymbol out(n_);
    for (const auto& [k, c] : terms_) out.add_term(k.beta, k.alpha, Ops::conj(c));
    return out;
  }

  BasicPolySymbol& operator+=(const BasicPolySymbol& o) {
    require_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k.alpha, k.beta, c);
    return *this;
  }
  BasicPolySymbol& operator-=(const BasicPolySymbol& o) {
    require_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k.alpha, k.beta, Scalar(0) - c);
    return *this;
  }
  friend BasicPolySymbol operator+(BasicPolySymbol a, const BasicPolySymbol& b) { return a += b; }
  friend BasicPolySymbol operator-(BasicPolySymbol a, const BasicPolySymbol& b) { return a -= b; }
  friend BasicPolySymbol operator*(const Scalar& s, const BasicPolySymbol& a) {
    BasicPolySymbol out(a.n_);
    for (const auto& [k, c] : a.terms_) out.add_term(k.alpha, k.beta, s * c);
    return out;
  }
  friend BasicPolySymbol operator*(const BasicPolySymbol& a, const BasicPolySymbol& b) {
    a.require_same(b);
    BasicPolySymbol out(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) out.add_term(ka.alpha + kb.alpha, ka.beta + kb.beta, ca * cb);
    }
    return out;
  }
  friend bool operator==(const BasicPolySymbol& a, const BasicPolySymbol& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void require_same(const BasicPolySymbol& o) const {
    if (o.n_ != n_) throw UsageError("symbols have different dimensions");
  }

  int n_ = 1;
  TermMap terms_;
};

using PolySymbol = BasicPolySymbol<cplx>;
using ExactSymbol = BasicPolySymbol<ExactComplex>;

// Doubles convert exactly to rationals, so to_exact(p) loses nothing.
ExactSymbol to_exact(const PolySymbol& p);
PolySymbol to_double(const ExactSymbol& p);

// Text form: terms "coeff * z^[a1,..,an] * zbar^[b1,..,bn]" joined by + / -.
// Factors with a zero exponent vector may be omitted; a bare factor means
// coefficient 1. Complex coefficients are written "(re+imi)". When no factor
// names the dimension, n_hint (default 1) is used.
PolySymbol parse_symbol(const std::string& text, int n_hint = 0);
// Compact printer, highest degree first: "1*z^[1]*zbar^[1] + 1". Doubles
// use the shortest representation that reads back to the same value, so
// parse_symbol(format_symbol(p)) == p.
std::string format_symbol(const PolySymbol& p);

}  // namespace wicklab
