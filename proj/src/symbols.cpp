#include "wicklab/symbols.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "wicklab/numerics.h"
#include "wicklab/quadrature.h"

namespace wicklab {

namespace {

// prod_j alpha_j! / (alpha_j - theta_j)!
long long falling(const MultiIndex& alpha, const MultiIndex& theta) {
  long long v = 1;
  for (int j = 0; j < alpha.dim(); ++j) {
    for (int i = 0; i < theta[j]; ++i) v *= alpha[j] - i;
  }
  return v;
}

long long small_factorial(const MultiIndex& theta) {
  long long v = 1;
  for (int e : theta.exponents()) {
    for (int i = 2; i <= e; ++i) v *= i;
  }
  return v;
}

template <class S>
BasicPolySymbol<S> contraction_series(const BasicPolySymbol<S>& f, int sign) {
  using Ops = ScalarOps<S>;
  BasicPolySymbol<S> out(f.n());
  for (const auto& [key, c] : f.terms()) {
    for_each_below(key.alpha.componentwise_min(key.beta), [&](const MultiIndex& theta) {
      // (1/theta!) d^theta z^alpha * d^theta zbar^beta = C(alpha, theta) beta!/(beta-theta)!
      long long w = falling(key.alpha, theta) / small_factorial(theta) * falling(key.beta, theta);
      if (sign < 0 && theta.degree() % 2 == 1) w = -w;
      out.add_term(key.alpha - theta, key.beta - theta, Ops::ratio(w, 1) * c);
    });
  }
  return out;
}

}  // namespace

template <class S>
BasicPolySymbol<S> wick_transform(const BasicPolySymbol<S>& f) {
  return contraction_series(f, +1);
}

template <class S>
BasicPolySymbol<S> antiwick_transform(const BasicPolySymbol<S>& f) {
  return contraction_series(f, -1);
}

template <class S>
BasicPolySymbol<S> compose_antiwick(const BasicPolySymbol<S>& b, const BasicPolySymbol<S>& a) {
  using Ops = ScalarOps<S>;
  if (a.n() != b.n()) throw UsageError("symbols have different dimensions");
  BasicPolySymbol<S> out(a.n());
  for (const auto& [kb, cb] : b.terms()) {
    for (const auto& [ka, ca] : a.terms()) {
      const S prod = cb * ca;
      for_each_below(kb.alpha.componentwise_min(ka.beta), [&](const MultiIndex& theta) {
        long long w = falling(kb.alpha, theta) / small_factorial(theta) * falling(ka.beta, theta);
        if (theta.degree() % 2 == 1) w = -w;
        out.add_term(kb.alpha - theta + ka.alpha, kb.beta + ka.beta - theta, Ops::ratio(w, 1) * prod);
      });
    }
  }
  return out;
}

template <class S>
BasicPolySymbol<S> derivative(const BasicPolySymbol<S>& f, const MultiIndex& theta, const MultiIndex& phi) {
  using Ops = ScalarOps<S>;
  BasicPolySymbol<S> out(f.n());
  for (const auto& [key, c] : f.terms()) {
    if (!theta.fits_in(key.alpha) || !phi.fits_in(key.beta)) continue;
    const long long w = falling(key.alpha, theta) * falling(key.beta, phi);
    out.add_term(key.alpha - theta, key.beta - phi, Ops::ratio(w, 1) * c);
  }
  return out;
}

template <class S>
BasicPolySymbol<S> trace_contract(const BasicPolySymbol<S>& f, int tau) {
  using Ops = ScalarOps<S>;
  BasicPolySymbol<S> out(f.n());
  if (tau < 0) throw UsageError("contraction order must be >= 0");
  long long tau_fact = 1;
  for (int i = 2; i <= tau; ++i) tau_fact *= i;
  for (const auto& theta : indices_of_degree(f.n(), tau)) {
    out += Ops::ratio(tau_fact / small_factorial(theta), 1) * derivative(f, theta, theta);
  }
  return out;
}

template PolySymbol wick_transform(const PolySymbol&);
template ExactSymbol wick_transform(const ExactSymbol&);
template PolySymbol antiwick_transform(const PolySymbol&);
template ExactSymbol antiwick_transform(const ExactSymbol&);
template PolySymbol compose_antiwick(const PolySymbol&, const PolySymbol&);
template ExactSymbol compose_antiwick(const ExactSymbol&, const ExactSymbol&);
template PolySymbol derivative(const PolySymbol&, const MultiIndex&, const MultiIndex&);
template ExactSymbol derivative(const ExactSymbol&, const MultiIndex&, const MultiIndex&);
template PolySymbol trace_contract(const PolySymbol&, int);
template ExactSymbol trace_contract(const ExactSymbol&, int);

ExactSymbol to_exact(const PolySymbol& p) {
  ExactSymbol out(p.n());
  for (const auto& [k, c] : p.terms()) out.add_term(k.alpha, k.beta, ExactComplex(Rational(c.real()), Rational(c.imag())));
  return out;
}

PolySymbol to_double(const ExactSymbol& p) {
  PolySymbol out(p.n());
  for (const auto& [k, c] : p.terms()) out.add_term(k.alpha, k.beta, ScalarOps<ExactComplex>::to_complex(c));
  return out;
}

PolySymbol hermite_poly(int k, int l) { return hermite_poly(MultiIndex({k}), MultiIndex({l})); }

PolySymbol hermite_poly(const MultiIndex& k, const MultiIndex& l) {
  if (k.dim() != l.dim()) throw UsageError("Hermite index dimensions differ");
  const int n = k.dim();
  PolySymbol out = PolySymbol::constant(n, 1.0);
  for (int j = 0; j < n; ++j) {
    PolySymbol factor(n);
    for (int i = 0; i <= std::min(k[j], l[j]); ++i) {
      const double c = (i % 2 ? -1.0 : 1.0) * factorial(k[j]) * factorial(l[j]) /
                       (factorial(i) * factorial(k[j] - i) * factorial(l[j] - i));
      std::vector<int> a(static_cast<std::size_t>(n), 0);
      std::vector<int> b(static_cast<std::size_t>(n), 0);
      a[static_cast<std::size_t>(j)] = k[j] - i;
      b[static_cast<std::size_t>(j)] = l[j] - i;
      factor.add_term(MultiIndex(a), MultiIndex(b), c);
    }
    out = out * factor;
  }
  return out;
}

PolySymbol hermite_normalized(const MultiIndex& k, const MultiIndex& l) {
  return cplx(1.0 / std::sqrt(factorial(k) * factorial(l)), 0.0) * hermite_poly(k, l);
}

PolySymbol SymbolTensor::at(const std::vector<int>& holo_slots, const std::vector<int>& antiholo_slots) const {
  auto it = entries.find({holo_slots, antiholo_slots});
  return it == entries.end() ? PolySymbol(n) : it->second;
}

PolySymbol SymbolTensor::trace() const {
  if (holo_order != antiholo_order) throw UsageError("trace needs equal holomorphic and antiholomorphic orders");
  PolySymbol out(n);
  for (const auto& [slots, value] : entries) {
    if (slots.first == slots.second) out += value;
  }
  return out;
}

namespace {

MultiIndex counts_of(const std::vector<int>& slots, int n) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (int s : slots) ++e[static_cast<std::size_t>(s)];
  return MultiIndex(std::move(e));
}

void for_each_tuple(int n, int length, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> t(static_cast<std::size_t>(length), 0);
  while (true) {
    f(t);
    int pos = length - 1;
    while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == n) t[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) return;
  }
}

}  // namespace

SymbolTensor differentiate(const PolySymbol& f, int holo_order, int antiholo_order) {
  if (holo_order < 0 || antiholo_order < 0) throw UsageError("derivative orders must be >= 0");
  SymbolTensor t;
  t.n = f.n();
  t.holo_order = holo_order;
  t.antiholo_order = antiholo_order;
  for_each_tuple(f.n(), holo_order, [&](const std::vector<int>& hs) {
    const MultiIndex theta = counts_of(hs, f.n());
    for_each_tuple(f.n(), antiholo_order, [&](const std::vector<int>& as) {
      PolySymbol d = derivative(f, theta, counts_of(as, f.n()));
      if (!d.empty()) t.entries.emplace(std::make_pair(hs, as), std::move(d));
    });
  });
  return t;
}

cplx integrate(const PolySymbol& f) {
  cplx total = 0.0;
  for (const auto& [k, c] : f.terms()) total += c * gaussian_moment(k.alpha, k.beta);
  return total;
}

cplx l2_inner(const PolySymbol& f, const PolySymbol& g) {
  if (f.n() != g.n()) throw UsageError("symbols have different dimensions");
  cplx total = 0.0;
  for (const auto& [kf, cf] : f.terms()) {
    for (const auto& [kg, cg] : g.terms()) {
      // f-term times conj(g-term) is z^{a+d} zbar^{b+c}.
      total += cf * std::conj(cg) * gaussian_moment(kf.alpha + kg.beta, kf.beta + kg.alpha);
    }
  }
  return total;
}

PolySymbol bergman_project(const PolySymbol& f) {
  PolySymbol out(f.n());
  const MultiIndex zero = MultiIndex::zero(f.n());
  for (const auto& [k, c] : f.terms()) {
    if (!k.beta.fits_in(k.alpha)) continue;
    out.add_term(k.alpha - k.beta, zero, c * (factorial(k.alpha) / factorial(k.alpha - k.beta)));
  }
  return out;
}

namespace {

cplx monomial_value(const MultiIndex& alpha, const MultiIndex& beta, std::span<const cplx> z,
                    std::span<const cplx> w) {
  cplx v = 1.0;
  for (int j = 0; j < alpha.dim(); ++j) {
    const auto sj = static_cast<std::size_t>(j);
    if (alpha[j]) v *= std::pow(z[sj], alpha[j]);
    if (beta[j]) v *= std::pow(std::conj(w[sj]), beta[j]);
  }
  return v;
}

}  // namespace

cplx evaluate(const PolySymbol& f, std::span<const cplx> z) { return evaluate_biholo(f, z, z); }

cplx evaluate_biholo(const PolySymbol& f, std::span<const cplx> z, std::span<const cplx> w) {
  if (static_cast<int>(z.size()) != f.n() || static_cast<int>(w.size()) != f.n()) {
    throw UsageError("evaluation point has the wrong dimension");
  }
  cplx total = 0.0;
  for (const auto& [k, c] : f.terms()) total += c * monomial_value(k.alpha, k.beta, z, w);
  return total;
}

bool is_real(const PolySymbol& f, double tol) {
  for (const auto& [k, c] : f.terms()) {
    if (std::abs(c - std::conj(f.coefficient(k.beta, k.alpha))) > tol) return false;
  }
  return true;
}

cplx HermiteExpansion::coefficient(const MultiIndex& k, const MultiIndex& l) const {
  auto it = coeffs.find(TermKey{k, l});
  return it == coeffs.end() ? cplx{} : it->second;
}

PolySymbol HermiteExpansion::wick_reconstruction() const {
  PolySymbol out(n);
  for (const auto& [key, c] : coeffs) {
    out.add_term(key.alpha, key.beta, c / std::sqrt(factorial(key.alpha) * factorial(key.beta)));
  }
  return out;
}

namespace {

std::map<TermKey, cplx> hermite_level(const std::function<cplx(std::span<const cplx>)>& f, int n,
                                      const std::vector<TermKey>& keys, int cutoff, int radial, int angular) {
  const QuadratureRule& rule = gauss_laguerre(radial, 0.0);
  const int per_axis = radial * angular;
  // One-coordinate grid: w = sqrt(t) e^{i phi} with weight w_t / angular.
  std::vector<cplx> points(static_cast<std::size_t>(per_axis));
  std::vector<double> weights(static_cast<std::size_t>(per_axis));
  for (int r = 0; r < radial; ++r) {
    for (int a = 0; a < angular; ++a) {
      const double phi = 2.0 * M_PI * a / angular;
      const auto idx = static_cast<std::size_t>(r * angular + a);
      points[idx] = std::polar(std::sqrt(rule.nodes[static_cast<std::size_t>(r)]), phi);
      weights[idx] = rule.weights[static_cast<std::size_t>(r)] / angular;
    }
  }
  // conj(H_{k,l}(w)) for every 1D pair with k + l <= cutoff, at every grid point.
  std::vector<std::vector<cplx>> table(static_cast<std::size_t>((cutoff + 1) * (cutoff + 1)));
  for (int k = 0; k <= cutoff; ++k) {
    for (int l = 0; k + l <= cutoff; ++l) {
      const PolySymbol h = hermite_normalized(MultiIndex({k}), MultiIndex({l}));
      auto& col = table[static_cast<std::size_t>(k * (cutoff + 1) + l)];
      col.resize(points.size());
      for (std::size_t p = 0; p < points.size(); ++p) {
        col[p] = std::conj(evaluate(h, std::span<const cplx>(&points[p], 1)));
      }
    }
  }
  std::vector<cplx> acc(keys.size(), cplx{});
  std::vector<int> pos(static_cast<std::size_t>(n), 0);
  std::vector<cplx> z(static_cast<std::size_t>(n));
  while (true) {
    double w = 1.0;
    for (int j = 0; j < n; ++j) {
      z[static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])];
      w *= weights[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])];
    }
    if (w > 0.0) {
      const cplx fw = f(z) * w;
      for (std::size_t q = 0; q < keys.size(); ++q) {
        cplx h = fw;
        for (int j = 0; j < n; ++j) {
          const int k = keys[q].alpha[j];
          const int l = keys[q].beta[j];
          h *= table[static_cast<std::size_t>(k * (cutoff + 1) + l)][static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])];
        }
        acc[q] += h;
      }
    }
    int j = n - 1;
    while (j >= 0 && ++pos[static_cast<std::size_t>(j)] == per_axis) pos[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  std::map<TermKey, cplx> out;
  for (std::size_t q = 0; q < keys.size(); ++q) out.emplace(keys[q], acc[q]);
  return out;
}

}  // namespace

HermiteExpansion hermite_expand(const std::function<cplx(std::span<const cplx>)>& f, int n, int cutoff, double tol,
                                int max_radial_nodes) {
  if (n < 1 || cutoff < 0) throw UsageError("hermite_expand needs n >= 1 and cutoff >= 0");
  std::vector<TermKey> keys;
  for (int total = 0; total <= cutoff; ++total) {
    for (int dk = 0; dk <= total; ++dk) {
      for (const auto& k : indices_of_degree(n, dk)) {
        for (const auto& l : indices_of_degree(n, total - dk)) keys.push_back(TermKey{k, l});
      }
    }
  }
  HermiteExpansion out;
  out.n = n;
  out.cutoff = cutoff;
  int radial = 16;
  auto prev = hermite_level(f, n, keys, cutoff, radial, 2 * radial);
  while (true) {
    const int next_radial = 2 * radial;
    auto cur = hermite_level(f, n, keys, cutoff, next_radial, 2 * next_radial);
    double change = 0.0;
    for (const auto& key : keys) change = std::max(change, std::abs(cur[key] - prev[key]));
    out.coeffs = std::move(cur);
    out.last_change = change;
    out.radial_nodes = next_radial;
    out.angular_nodes = 2 * next_radial;
    if (change <= tol) {
      out.converged = true;
      break;
    }
    if (2 * next_radial > max_radial_nodes) break;
    prev = out.coeffs;
    radial = next_radial;
  }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
    if (it->second == cplx{}) {
      it = out.coeffs.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

// ---- text format ----

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string exponent_list(const MultiIndex& m) {
  std::string s = "[";
  for (int j = 0; j < m.dim(); ++j) {
    if (j) s += ",";
    s += std::to_string(m[j]);
  }
  return s + "]";
}

class SymbolParser {
 public:
  explicit SymbolParser(const std::string& text) : s_(text) {}

  struct RawTerm {
    cplx coeff = 1.0;
    std::optional<std::vector<int>> alpha;
    std::optional<std::vector<int>> beta;
  };

  std::vector<RawTerm> parse() {
    std::vector<RawTerm> terms;
    skip();
    if (pos_ >= s_.size()) fail("empty symbol");
    bool first = true;
    while (pos_ < s_.size()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      RawTerm t = term();
      t.coeff *= sign;
      terms.push_back(std::move(t));
      first = false;
      skip();
    }
    return terms;
  }

 private:
  RawTerm term() {
    RawTerm t;
    bool any = false;
    while (true) {
      skip();
      factor(t);
      any = true;
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    return t;
  }

  void factor(RawTerm& t) {
    if (s_.compare(pos_, 4, "zbar") == 0) {
      pos_ += 4;
      if (t.beta) fail("repeated zbar factor");
      t.beta = exponents();
    } else if (peek() == 'z') {
      ++pos_;
      if (t.alpha) fail("repeated z factor");
      t.alpha = exponents();
    } else if (peek() == '(') {
      ++pos_;
      t.coeff *= complex_literal();
    } else {
      const double v = number();
      if (peek() == 'i') {
        ++pos_;
        t.coeff *= cplx(0.0, v);
      } else {
        t.coeff *= v;
      }
    }
  }

  cplx complex_literal() {
    skip();
    double re = number();
    double im = 0.0;
    skip();
    if (peek() == 'i') {
      ++pos_;
      im = re;
      re = 0.0;
    } else if (peek() == '+' || peek() == '-') {
      im = number();
      skip();
      if (peek() != 'i') fail("expected 'i' in complex coefficient");
      ++pos_;
    }
    skip();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    return {re, im};
  }

  double number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  std::vector<int> exponents() {
    skip();
    if (peek() != '^') fail("expected '^['");
    ++pos_;
    skip();
    if (peek() != '[') fail("expected '['");
    ++pos_;
    std::vector<int> e;
    while (true) {
      skip();
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const long v = std::strtol(begin, &end, 10);
      if (end == begin || v < 0) fail("expected a nonnegative exponent");
      pos_ += static_cast<std::size_t>(end - begin);
      e.push_back(static_cast<int>(v));
      skip();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        break;
      }
      fail("expected ',' or ']'");
    }
    return e;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw UsageError("cannot parse symbol at offset " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

PolySymbol parse_symbol(const std::string& text, int n_hint) {
  auto raw = SymbolParser(text).parse();
  int n = 0;
  for (const auto& t : raw) {
    for (const auto* e : {&t.alpha, &t.beta}) {
      if (!*e) continue;
      const int d = static_cast<int>((*e)->size());
      if (n == 0) {
        n = d;
      } else if (n != d) {
        throw UsageError("symbol mixes exponent vectors of different lengths");
      }
    }
  }
  if (n_hint > 0) {
    if (n != 0 && n != n_hint) throw UsageError("symbol dimension does not match the requested n");
    n = n_hint;
  }
  if (n == 0) n = 1;
  PolySymbol p(n);
  for (const auto& t : raw) {
    const MultiIndex a = t.alpha ? MultiIndex(*t.alpha) : MultiIndex::zero(n);
    const MultiIndex b = t.beta ? MultiIndex(*t.beta) : MultiIndex::zero(n);
    p.add_term(a, b, t.coeff);
  }
  return p;
}

std::string format_symbol(const PolySymbol& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [key, c] = *it;
    std::string coeff;
    bool negative = false;
    if (c.imag() == 0.0) {
      negative = std::signbit(c.real());
      coeff = shortest(std::abs(c.real()));
    } else {
      const std::string im = shortest(c.imag());
      coeff = "(" + shortest(c.real()) + (im[0] == '-' ? "" : "+") + im + "i)";
    }
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += coeff;
    if (key.alpha.degree() > 0) out += "*z^" + exponent_list(key.alpha);
    if (key.beta.degree() > 0) out += "*zbar^" + exponent_list(key.beta);
    first = false;
  }
  return out;
}

}  // namespace wicklab
