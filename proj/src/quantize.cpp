#include "wicklab/quantize.h"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "wicklab/errors.h"
#include "wicklab/numerics.h"
#include "wicklab/quadrature.h"
#include "wicklab/symbols.h"

namespace wicklab {

const char* to_string(ExactnessKind kind) {
  switch (kind) {
    case ExactnessKind::exact:
      return "exact";
    case ExactnessKind::safe_block:
      return "safe_block";
    case ExactnessKind::quadrature:
      return "quadrature";
  }
  return "exact";
}

namespace {

// prod_j alpha_j! / (alpha_j - theta_j)! in floating point.
double falling_d(const MultiIndex& alpha, const MultiIndex& theta) {
  double v = 1.0;
  for (int j = 0; j < alpha.dim(); ++j) {
    for (int i = 0; i < theta[j]; ++i) v *= alpha[j] - i;
  }
  return v;
}

Eigen::MatrixXcd zero_matrix(const FockBasis& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  return Eigen::MatrixXcd::Zero(d, d);
}

Eigen::VectorXd sobolev_weights(const FockBasis& basis, double s) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    w[static_cast<Eigen::Index>(i)] = std::pow(1.0 + basis.degree_of(i), 0.5 * s);
  }
  return w;
}

double largest_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues().maxCoeff());
}

}  // namespace

QuantizationResult antiwick_quantize_poly(const PolySymbol& b, const TruncationParams& params) {
  if (b.n() != params.n) throw UsageError("symbol dimension does not match params.n");
  auto basis = make_basis(params);
  Eigen::MatrixXcd m = zero_matrix(*basis);
  for (std::size_t col = 0; col < basis->size(); ++col) {
    const MultiIndex& alpha = (*basis)[col];
    for (const auto& [key, c] : b.terms()) {
      const MultiIndex top = key.alpha + alpha;
      if (!key.beta.fits_in(top)) continue;
      const MultiIndex beta = top - key.beta;
      const auto row = basis->find(beta);
      if (row < 0) continue;
      // (gamma+alpha)! / sqrt(alpha! beta!) written with integer falling products.
      const double v = std::sqrt(falling_d(top, key.alpha) * falling_d(top, key.beta));
      m(row, static_cast<Eigen::Index>(col)) += c * v;
    }
  }
  const DegreeShift shift = b.shift_range();
  Exactness ex = Exactness::exact_all(params.degree_max);
  if (shift.max > 0) {
    ex.kind = ExactnessKind::safe_block;
    ex.safe_degree = params.degree_max - shift.max;
  }
  return {FockOperator(basis, std::move(m), shift), ex, "antiwick:" + format_symbol(b)};
}

RadialSpectrum radial_spectrum(const RadialSymbol& b, int degree_max, double tol) {
  if (degree_max < 0) throw UsageError("degree_max must be >= 0");
  if (!b.profile) throw UsageError("radial symbol has no profile");
  RadialSpectrum out;
  out.tolerance = tol;
  out.eigenvalues.resize(static_cast<std::size_t>(degree_max) + 1);
  const int n = b.n;
  auto integrate_at = [&](int k, int nodes) {
    const double a = k + n - 1.0;
    double sum = 0.0;
    if (b.support) {
      const double T = *b.support;
      const QuadratureRule& rule = gauss_legendre(nodes);
      const double lg = std::lgamma(a + 1.0);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = 0.5 * T * (rule.nodes[i] + 1.0);
        const double density = std::exp(a * std::log(t) - t - lg);
        sum += 0.5 * T * rule.weights[i] * b.profile(t) * density;
      }
    } else {
      const QuadratureRule& rule = gauss_laguerre(nodes, a);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        if (rule.weights[i] == 0.0) continue;
        sum += rule.weights[i] * b.profile(rule.nodes[i]);
      }
    }
    return sum;
  };
  constexpr int kStart = 64;
  constexpr int kCap = 1024;
  for (int k = 0; k <= degree_max; ++k) {
    int nodes = kStart;
    double prev = integrate_at(k, nodes);
    while (true) {
      if (2 * nodes > kCap) {
        throw QuadratureError("radial eigenvalue k=" + std::to_string(k) + " did not converge with " +
                              std::to_string(kCap) + " nodes");
      }
      nodes *= 2;
      const double cur = integrate_at(k, nodes);
      const bool ok = std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur));
      prev = cur;
      if (ok) break;
    }
    out.eigenvalues[static_cast<std::size_t>(k)] = prev;
    out.nodes = std::max(out.nodes, nodes);
  }
  return out;
}

QuantizationResult antiwick_quantize_radial(const RadialSymbol& b, const TruncationParams& params, double tol) {
  if (b.n != params.n) throw UsageError("radial symbol dimension does not match params.n");
  auto basis = make_basis(params);
  const RadialSpectrum spec = radial_spectrum(b, params.degree_max, tol);
  Eigen::MatrixXcd m = zero_matrix(*basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        spec.eigenvalues[static_cast<std::size_t>(basis->degree_of(i))];
  }
  Exactness ex{ExactnessKind::quadrature, params.degree_max, tol, spec.nodes};
  return {FockOperator(basis, std::move(m), {0, 0}), ex, "antiwick-radial:" + b.label};
}

WickValue wick_symbol_of(const FockOperator& A, std::span<const cplx> z) {
  const FockVector e = coherent_state(z, A.params());
  double r2 = 0.0;
  for (const cplx& zj : z) r2 += std::norm(zj);
  WickValue out;
  out.value = std::exp(-r2) * inner_product(A.apply(e), e);
  out.radius_exceeded = r2 > A.params().degree_max / 4.0;
  return out;
}

PolySymbol wick_symbol_poly(const FockOperator& A, int max_degree, double drop_tol) {
  const FockBasis& basis = A.basis();
  const int D = max_degree < 0 ? A.params().degree_max : std::min(max_degree, A.params().degree_max);
  const std::size_t size = basis.block_offset(D + 1);
  PolySymbol out(A.params().n);
  for (std::size_t gi = 0; gi < size; ++gi) {
    const MultiIndex& gamma = basis[gi];
    for (std::size_t di = 0; di < size; ++di) {
      const MultiIndex& delta = basis[di];
      cplx c = 0.0;
      for_each_below(gamma.componentwise_min(delta), [&](const MultiIndex& theta) {
        const MultiIndex row = gamma - theta;
        const MultiIndex col = delta - theta;
        const double w = (theta.degree() % 2 ? -1.0 : 1.0) / factorial(theta) /
                         std::sqrt(factorial(row) * factorial(col));
        c += w * A.matrix()(basis.find(row), basis.find(col));
      });
      if (std::abs(c) > drop_tol) out.add_term(gamma, delta, c);
    }
  }
  return out;
}

OperatorFamily annihilation_op(int k, const TruncationParams& params) {
  if (k < 0) throw UsageError("ladder order must be >= 0");
  if (k > params.degree_max) throw UsageError("ladder order exceeds the truncation degree");
  auto basis = make_basis(params);
  OperatorFamily fam;
  fam.order = k;
  fam.components = indices_of_degree(params.n, k);
  for (const MultiIndex& theta : fam.components) {
    Eigen::MatrixXcd m = zero_matrix(*basis);
    const double norm = factorial(theta);
    for (std::size_t col = 0; col < basis->size(); ++col) {
      const MultiIndex& alpha = (*basis)[col];
      if (!theta.fits_in(alpha)) continue;
      m(basis->find(alpha - theta), static_cast<Eigen::Index>(col)) = std::sqrt(falling_d(alpha, theta) / norm);
    }
    fam.ops.emplace_back(basis, std::move(m), DegreeShift{-k, -k});
  }
  return fam;
}

OperatorFamily creation_op(int k, const TruncationParams& params) {
  OperatorFamily fam = annihilation_op(k, params);
  for (auto& op : fam.ops) op = op.adjoint();
  return fam;
}

FockOperator number_operator(const TruncationParams& params) {
  auto basis = make_basis(params);
  Eigen::MatrixXcd m = zero_matrix(*basis);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = basis->degree_of(i);
  }
  return FockOperator(basis, std::move(m), {0, 0});
}

namespace {

void add_normal_ordered(Eigen::MatrixXcd& m, const FockBasis& basis, const MultiIndex& theta, const MultiIndex& phi,
                        cplx c) {
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const MultiIndex& alpha = basis[col];
    if (!phi.fits_in(alpha)) continue;
    const MultiIndex beta = alpha - phi + theta;
    const auto row = basis.find(beta);
    if (row < 0) continue;
    m(row, static_cast<Eigen::Index>(col)) += c * std::sqrt(falling_d(alpha, phi) * falling_d(beta, theta));
  }
}

}  // namespace

FockOperator normal_ordered_monomial(const MultiIndex& theta, const MultiIndex& phi, const TruncationParams& params) {
  if (theta.dim() != params.n || phi.dim() != params.n) throw UsageError("multi-index dimension mismatch");
  auto basis = make_basis(params);
  Eigen::MatrixXcd m = zero_matrix(*basis);
  add_normal_ordered(m, *basis, theta, phi, 1.0);
  const int s = theta.degree() - phi.degree();
  return FockOperator(basis, std::move(m), {s, s});
}

FockOperator wick_quantize(const PolySymbol& f, const TruncationParams& params) {
  if (f.n() != params.n) throw UsageError("symbol dimension does not match params.n");
  auto basis = make_basis(params);
  Eigen::MatrixXcd m = zero_matrix(*basis);
  for (const auto& [key, c] : f.terms()) add_normal_ordered(m, *basis, key.alpha, key.beta, c);
  return FockOperator(basis, std::move(m), f.shift_range());
}

FockOperator harmonic_oscillator(const OscillatorCoefficients& coeffs, const TruncationParams& params) {
  auto basis = make_basis(params);
  Eigen::MatrixXcd m = zero_matrix(*basis);
  DegreeShift shift{0, 0};
  bool first = true;
  for (const auto& [kl, a] : coeffs) {
    const auto [k, l] = kl;
    if (k < 0 || l < 0) throw UsageError("oscillator orders must be >= 0");
    const auto rows = indices_of_degree(params.n, k);
    const auto cols = indices_of_degree(params.n, l);
    if (a.rows() != static_cast<Eigen::Index>(rows.size()) || a.cols() != static_cast<Eigen::Index>(cols.size())) {
      throw UsageError("coefficient a_{" + std::to_string(k) + "," + std::to_string(l) + "} must be " +
                       std::to_string(rows.size()) + "x" + std::to_string(cols.size()));
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        const cplx c = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (c == cplx{}) continue;
        add_normal_ordered(m, *basis, rows[i], cols[j], c / std::sqrt(factorial(rows[i]) * factorial(cols[j])));
      }
    }
    const int s = k - l;
    shift = first ? DegreeShift{s, s} : DegreeShift{std::min(shift.min, s), std::max(shift.max, s)};
    first = false;
  }
  return FockOperator(basis, std::move(m), shift);
}

TraceExpansion antiwick_from_wick_traces(const PolySymbol& wick_symbol) {
  TraceExpansion out;
  out.antiwick = PolySymbol(wick_symbol.n());
  const int top = std::min(wick_symbol.holo_degree(), wick_symbol.antiholo_degree());
  for (int tau = 0; tau <= top; ++tau) {
    const double w = (tau % 2 ? -1.0 : 1.0) / factorial(tau);
    PolySymbol term = cplx(w, 0.0) * trace_contract(wick_symbol, tau);
    out.antiwick += term;
    out.terms.push_back(std::move(term));
  }
  return out;
}

double hs_norm(const FockOperator& A) { return A.matrix().norm(); }

double hs_norm_radial(const RadialSymbol& b, const TruncationParams& params, double tol) {
  params.validate();
  const RadialSpectrum spec = radial_spectrum(b, params.degree_max, tol);
  double total = 0.0;
  for (int k = 0; k <= params.degree_max; ++k) {
    const double lam = spec.eigenvalues[static_cast<std::size_t>(k)];
    total += static_cast<double>(params.block_size(k)) * lam * lam;
  }
  return std::sqrt(total);
}

double sobolev_operator_norm(const FockOperator& A, double s_in, double s_out) {
  const Eigen::VectorXd w_out = sobolev_weights(A.basis(), s_out);
  const Eigen::VectorXd w_in = sobolev_weights(A.basis(), s_in);
  const Eigen::MatrixXcd m = w_out.asDiagonal() * A.matrix() * w_in.cwiseInverse().asDiagonal();
  return std::sqrt(largest_eigenvalue(m.adjoint() * m));
}

double sobolev_family_norm(const OperatorFamily& family, double s_in, double s_out, Stacking stacking) {
  if (family.ops.empty()) return 0.0;
  const FockBasis& basis = family.ops.front().basis();
  const Eigen::VectorXd w_out = sobolev_weights(basis, s_out);
  const Eigen::VectorXd w_in_inv = sobolev_weights(basis, s_in).cwiseInverse();
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& op : family.ops) {
    const Eigen::MatrixXcd m = w_out.asDiagonal() * op.matrix() * w_in_inv.asDiagonal();
    if (stacking == Stacking::output) {
      gram.noalias() += m.adjoint() * m;
    } else {
      gram.noalias() += m * m.adjoint();
    }
  }
  return std::sqrt(largest_eigenvalue(gram));
}

}  // namespace wicklab
