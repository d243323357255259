#pragma once

// Operators from symbols on the truncated Fock space.
//
// Matrix convention: entry (row beta, column alpha) is <A e_alpha, e_beta>
// in the orthonormal basis e_alpha = z^alpha / sqrt(alpha!).

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wicklab/fock.h"
#include "wicklab/polynomial.h"
#include "wicklab/radial.h"

namespace wicklab {

enum class ExactnessKind { exact, safe_block, quadrature };

struct Exactness {
  ExactnessKind kind = ExactnessKind::exact;
  // Input degrees <= safe_degree are reproduced exactly (safe_block).
  int safe_degree = -1;
  // Convergence tolerance met by the quadrature (quadrature).
  double tolerance = 0.0;
  int nodes = 0;

  static Exactness exact_all(int degree_max) { return {ExactnessKind::exact, degree_max, 0.0, 0}; }
};

const char* to_string(ExactnessKind kind);

struct QuantizationResult {
  FockOperator op;
  Exactness exactness;
  std::string provenance;
};

// <B e_alpha, e_beta> = integral of b e_alpha conj(e_beta) dnu', from Gaussian
// moments. Truncation keeps the exact compression; columns of degree
// <= N - max(0, max shift of b) are complete.
QuantizationResult antiwick_quantize_poly(const PolySymbol& b, const TruncationParams& params);

struct RadialSpectrum {
  std::vector<double> eigenvalues;  // lambda_k, k = 0..N
  int nodes = 0;                    // largest rule used
  double tolerance = 0.0;
};

// lambda_k = (1/(k+n-1)!) integral b(t) t^{k+n-1} e^{-t} dt for k = 0..N.
// Unbounded profiles use generalized Gauss-Laguerre; profiles with declared
// support T use Gauss-Legendre on [0, T]. Nodes start at 64 and double
// until successive values differ by < tol * max(1, |lambda|); past 1024
// nodes a QuadratureError is thrown.
RadialSpectrum radial_spectrum(const RadialSymbol& b, int degree_max, double tol = 1e-10);
QuantizationResult antiwick_quantize_radial(const RadialSymbol& b, const TruncationParams& params,
                                            double tol = 1e-10);

struct WickValue {
  cplx value;
  bool radius_exceeded = false;  // |z|^2 > N / 4
};
// e^{-|z|^2} <A e_z, e_z> with truncated coherent states.
WickValue wick_symbol_of(const FockOperator& A, std::span<const cplx> z);
// Coefficients on z^gamma zbar^delta for |gamma|, |delta| <= max_degree
// (default N), solved from the matrix entries; terms below drop_tol vanish.
PolySymbol wick_symbol_poly(const FockOperator& A, int max_degree = -1, double drop_tol = 1e-10);

struct OperatorFamily {
  std::vector<MultiIndex> components;  // theta, |theta| = k
  std::vector<FockOperator> ops;
  int order = 0;
};

// Components a^theta / sqrt(theta!), |theta| = k. The 1/sqrt(theta!) makes
// the family an isometric copy of the symmetric tensor V_k, so for k = 1 it
// is the plain list (a_1, .., a_n).
OperatorFamily annihilation_op(int k, const TruncationParams& params);
// Componentwise adjoints.
OperatorFamily creation_op(int k, const TruncationParams& params);
FockOperator number_operator(const TruncationParams& params);
// (a*)^theta a^phi.
FockOperator normal_ordered_monomial(const MultiIndex& theta, const MultiIndex& phi, const TruncationParams& params);
// Normal-ordered operator whose Wick symbol is f.
FockOperator wick_quantize(const PolySymbol& f, const TruncationParams& params);

// Key (k, l): matrix V_l -> V_k in the basis order of indices_of_degree.
using OscillatorCoefficients = std::map<std::pair<int, int>, Eigen::MatrixXcd>;
// A = sum_{k,l} a_k^* a_{k,l} a_l.
FockOperator harmonic_oscillator(const OscillatorCoefficients& coeffs, const TruncationParams& params);

struct TraceExpansion {
  PolySymbol antiwick;
  // term[tau] = ((-1)^tau / tau!) tr_tau d_z^tau d_zbar^tau a^wick
  std::vector<PolySymbol> terms;
};
TraceExpansion antiwick_from_wick_traces(const PolySymbol& wick_symbol);

double hs_norm(const FockOperator& A);
// sqrt(sum_k dim V_k lambda_k^2), k <= N.
double hs_norm_radial(const RadialSymbol& b, const TruncationParams& params, double tol = 1e-10);

// Largest singular value of W_out A W_in^{-1}, W_s = diag (1+k)^{s/2}.
double sobolev_operator_norm(const FockOperator& A, double s_in, double s_out);
// Families: output-stacked means F -> F (x) V_k (annihilation), input-stacked
// means F (x) V_k -> F (creation). The V_k factor carries the l^2 norm.
enum class Stacking { output, input };
double sobolev_family_norm(const OperatorFamily& family, double s_in, double s_out, Stacking stacking);

}  // namespace wicklab
