#pragma once

// Truncated Bargmann-Fock space over C^n.
//
// A vector is stored by its coefficients Phi_alpha in the orthonormal basis
// z^alpha / sqrt(alpha!), for all multi-indices with |alpha| <= N. The basis
// is ordered graded-lexicographically: total degree ascending, and inside a
// degree block the exponent tuples in descending lexicographic order, so
// (n=2, N=1) gives (0,0), (1,0), (0,1). Degree blocks are contiguous, which
// makes "the degree <= d sub-block" a leading principal block.
//
// Truncation is a hard cutoff: anything an operator would send above degree N
// is dropped. Operators carry a DegreeShift so callers can work out which
// input block is reproduced exactly.

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace wicklab {

using cplx = std::complex<double>;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(int n);
  static MultiIndex unit(int n, int j);

  int dim() const { return static_cast<int>(exps_.size()); }
  int degree() const { return degree_; }
  int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& exponents() const { return exps_; }

  // Componentwise <=.
  bool fits_in(const MultiIndex& upper) const;

  MultiIndex operator+(const MultiIndex& other) const;
  // Throws UsageError if any component would go negative.
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex componentwise_min(const MultiIndex& other) const;
  MultiIndex componentwise_max(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }
  // Graded order matching the basis enumeration.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& m) const noexcept;
};

double factorial(const MultiIndex& alpha);
double log_factorial(const MultiIndex& alpha);

// All multi-indices of dimension n and total degree k, in basis order.
std::vector<MultiIndex> indices_of_degree(int n, int k);

// Calls f(theta) for every theta with 0 <= theta <= upper componentwise.
void for_each_below(const MultiIndex& upper, const std::function<void(const MultiIndex&)>& f);

struct TruncationParams {
  int n = 1;           // complex dimension
  int degree_max = 0;  // N

  void validate() const;
  // C(n + N, n).
  std::size_t basis_size() const;
  // Homogeneous block V_k: C(n + k - 1, k).
  std::size_t block_size(int k) const;
  // Polynomials of degree <= k: C(n + k, n). This is the count the
  // dimension formula (n+k)!/(n!k!) actually gives.
  std::size_t cumulative_size(int k) const;

  friend bool operator==(const TruncationParams&, const TruncationParams&) = default;
};

// Basis-size budget for dense constructions: 2e5 unless WICKLAB_MAX_BASIS
// is set in the environment.
std::size_t max_basis_size();
// Throws ResourceError when the params would exceed max_basis_size().
void check_basis_budget(const TruncationParams& params);

class FockBasis {
 public:
  explicit FockBasis(const TruncationParams& params);

  const TruncationParams& params() const { return params_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  // Position of alpha, or -1 when |alpha| > N.
  std::ptrdiff_t find(const MultiIndex& alpha) const;
  // First position of the degree-k block; block_offset(N + 1) == size().
  std::size_t block_offset(int k) const { return offsets_[static_cast<std::size_t>(k)]; }
  int degree_of(std::size_t i) const { return indices_[i].degree(); }

 private:
  TruncationParams params_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> lookup_;
};

// Shared, immutable basis for the given params (cached).
std::shared_ptr<const FockBasis> make_basis(const TruncationParams& params);

std::vector<MultiIndex> enumerate_basis(const TruncationParams& params);

class FockVector {
 public:
  explicit FockVector(std::shared_ptr<const FockBasis> basis);
  FockVector(std::shared_ptr<const FockBasis> basis, Eigen::VectorXcd coeffs);

  static FockVector zero(const TruncationParams& params);
  static FockVector unit(const TruncationParams& params, const MultiIndex& alpha);

  const TruncationParams& params() const { return basis_->params(); }
  const FockBasis& basis() const { return *basis_; }
  const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  cplx coefficient(const MultiIndex& alpha) const;

  // Phi_k: the degree-k component, zero elsewhere.
  FockVector degree_component(int k) const;
  double norm() const { return coeffs_.norm(); }

 private:
  std::shared_ptr<const FockBasis> basis_;
  Eigen::VectorXcd coeffs_;
};

// Range of total-degree changes the operator can apply to a monomial.
struct DegreeShift {
  int min = 0;
  int max = 0;
};

class FockOperator {
 public:
  FockOperator(std::shared_ptr<const FockBasis> basis, Eigen::MatrixXcd matrix, DegreeShift shift);

  static FockOperator identity(const TruncationParams& params);
  static FockOperator zero(const TruncationParams& params);

  const TruncationParams& params() const { return basis_->params(); }
  const FockBasis& basis() const { return *basis_; }
  const std::shared_ptr<const FockBasis>& basis_ptr() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  DegreeShift degree_shift() const { return shift_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  FockOperator adjoint() const;
  FockVector apply(const FockVector& v) const;
  // Leading principal block on the degree <= d indices.
  Eigen::MatrixXcd block(int max_degree) const;

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(cplx c, const FockOperator& a);

 private:
  std::shared_ptr<const FockBasis> basis_;
  Eigen::MatrixXcd matrix_;
  DegreeShift shift_;
};

// Sum_alpha Phi_alpha conj(Psi_alpha).
cplx inner_product(const FockVector& phi, const FockVector& psi);

// (Sum_k |Phi_k|^2 (1 + k)^s)^(1/2).
double sobolev_norm(const FockVector& phi, double s);

// Truncation of the reproducing kernel e_z(w) = exp(w . conj(z)); its
// coefficient on z^alpha/sqrt(alpha!) is conj(z)^alpha / sqrt(alpha!).
FockVector coherent_state(std::span<const cplx> z, const TruncationParams& params);

// Integral of w^alpha conj(w)^beta against exp(-|w|^2) dL(w) / pi^n.
double gaussian_moment(const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace wicklab
