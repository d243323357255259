#pragma once

// Operations on polynomial symbols: complex Hermite polynomials, the
// Wick/anti-Wick transforms exp(+-d_z d_zbar), the anti-Wick composition
// series, derivative tensors and their trace contractions, and Gaussian
// integrals against nu' = exp(-|z|^2) L(dz) / pi^n.

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "wicklab/polynomial.h"

namespace wicklab {

// Complex Hermite polynomial script-H_{k,l}(w, wbar) =
//   sum_j (-1)^j k! l! / (j! (k-j)! (l-j)!) w^{k-j} wbar^{l-j}.
// For multi-indices it is the product over coordinates.
PolySymbol hermite_poly(int k, int l);
PolySymbol hermite_poly(const MultiIndex& k, const MultiIndex& l);
// H_{k,l} = script-H_{k,l} / sqrt(k! l!), orthonormal in L^2(nu').
PolySymbol hermite_normalized(const MultiIndex& k, const MultiIndex& l);

// exp(d_z . d_zbar) f = sum_theta (1/theta!) d_z^theta d_zbar^theta f.
template <class S>
BasicPolySymbol<S> wick_transform(const BasicPolySymbol<S>& f);
// exp(-d_z . d_zbar) f, the exact inverse on polynomials.
template <class S>
BasicPolySymbol<S> antiwick_transform(const BasicPolySymbol<S>& f);

// Anti-Wick symbol of B o A from those of B and A:
//   c = sum_theta ((-1)^|theta| / theta!) (d_z^theta b) (d_zbar^theta a).
// b carries the holomorphic derivatives. Checked against the matrix product
// of the quantizations; for n = 1, b = z, a = zbar gives z zbar - 1.
template <class S>
BasicPolySymbol<S> compose_antiwick(const BasicPolySymbol<S>& b, const BasicPolySymbol<S>& a);

// d_z^theta d_zbar^phi f for multi-indices theta, phi.
template <class S>
BasicPolySymbol<S> derivative(const BasicPolySymbol<S>& f, const MultiIndex& theta, const MultiIndex& phi);

// All derivatives d_{z_{i1}}..d_{z_{ip}} d_{zbar_{j1}}..d_{zbar_{jq}} f, keyed
// by the ordered slot tuples (i1..ip | j1..jq). Only nonzero entries are kept.
struct SymbolTensor {
  int n = 1;
  int holo_order = 0;
  int antiholo_order = 0;
  std::map<std::pair<std::vector<int>, std::vector<int>>, PolySymbol> entries;

  PolySymbol at(const std::vector<int>& holo_slots, const std::vector<int>& antiholo_slots) const;
  // Sum over i of entry (i | i); requires holo_order == antiholo_order.
  PolySymbol trace() const;
};
SymbolTensor differentiate(const PolySymbol& f, int holo_order, int antiholo_order);

// tr_tau (d_z^tau d_zbar^tau) f = sum_{|theta| = tau} (tau! / theta!) d_z^theta d_zbar^theta f.
template <class S>
BasicPolySymbol<S> trace_contract(const BasicPolySymbol<S>& f, int tau);

// Integral of f against nu'.
cplx integrate(const PolySymbol& f);
// (f, g) = integral of f conj(g) dnu'.
cplx l2_inner(const PolySymbol& f, const PolySymbol& g);
// Bergman projection onto holomorphic polynomials:
//   pi(z^alpha zbar^beta) = alpha! / (alpha - beta)! z^{alpha - beta} if beta <= alpha, else 0.
PolySymbol bergman_project(const PolySymbol& f);

cplx evaluate(const PolySymbol& f, std::span<const cplx> z);
// Bi-holomorphic extension f(z, wbar): zbar replaced by conj(w).
cplx evaluate_biholo(const PolySymbol& f, std::span<const cplx> z, std::span<const cplx> w);
// Real-valued on C^n iff c_{alpha beta} = conj(c_{beta alpha}).
bool is_real(const PolySymbol& f, double tol = 0.0);

// Coefficients f_{k,l} = (f, H_{k,l}) of a sampled function, |k| + |l| <= K,
// by Gauss-Laguerre in t = |w_j|^2 times a uniform angular grid per
// coordinate. The grid doubles until two successive levels agree to tol.
struct HermiteExpansion {
  int n = 1;
  int cutoff = 0;
  std::map<TermKey, cplx> coeffs;  // key (k, l)
  bool converged = false;
  double last_change = 0.0;
  int radial_nodes = 0;
  int angular_nodes = 0;

  cplx coefficient(const MultiIndex& k, const MultiIndex& l) const;
  // Wick transform rebuilt from the expansion: sum f_{k,l} z^k zbar^l / sqrt(k! l!).
  PolySymbol wick_reconstruction() const;
};
HermiteExpansion hermite_expand(const std::function<cplx(std::span<const cplx>)>& f, int n, int cutoff,
                                double tol = 1e-10, int max_radial_nodes = 256);

}  // namespace wicklab
