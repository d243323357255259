#include "wicklab/fock.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "wicklab/errors.h"
#include "wicklab/numerics.h"

namespace wicklab {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw UsageError("multi-index entries must be nonnegative");
  }
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex MultiIndex::zero(int n) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0)); }

MultiIndex MultiIndex::unit(int n, int j) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(j)] = 1;
  return MultiIndex(std::move(e));
}

bool MultiIndex::fits_in(const MultiIndex& upper) const {
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    if (exps_[j] > upper.exps_[j]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  std::vector<int> e(exps_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] += other.exps_[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  std::vector<int> e(exps_);
  for (std::size_t j = 0; j < e.size(); ++j) {
    e[j] -= other.exps_[j];
    if (e[j] < 0) throw UsageError("multi-index subtraction went negative");
  }
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::componentwise_min(const MultiIndex& other) const {
  std::vector<int> e(exps_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = std::min(e[j], other.exps_[j]);
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::componentwise_max(const MultiIndex& other) const {
  std::vector<int> e(exps_);
  for (std::size_t j = 0; j < e.size(); ++j) e[j] = std::max(e[j], other.exps_[j]);
  return MultiIndex(std::move(e));
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) return a.dim() <=> b.dim();
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  // Same degree: descending lexicographic, so (1,0) precedes (0,1).
  return b.exps_ <=> a.exps_;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int e : m.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

double factorial(const MultiIndex& alpha) {
  double f = 1.0;
  for (int e : alpha.exponents()) f *= factorial(e);
  return f;
}

double log_factorial(const MultiIndex& alpha) {
  double f = 0.0;
  for (int e : alpha.exponents()) f += log_factorial(e);
  return f;
}

namespace {

void fill_degree(int n, int k, std::size_t pos, std::vector<int>& current, std::vector<MultiIndex>& out) {
  if (pos + 1 == static_cast<std::size_t>(n)) {
    current[pos] = k;
    out.emplace_back(current);
    return;
  }
  for (int first = k; first >= 0; --first) {
    current[pos] = first;
    fill_degree(n, k - first, pos + 1, current, out);
  }
}

void below_recursive(const MultiIndex& upper, std::size_t pos, std::vector<int>& current,
                     const std::function<void(const MultiIndex&)>& f) {
  if (pos == current.size()) {
    f(MultiIndex(current));
    return;
  }
  for (int e = 0; e <= upper[static_cast<int>(pos)]; ++e) {
    current[pos] = e;
    below_recursive(upper, pos + 1, current, f);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(int n, int k) {
  std::vector<MultiIndex> out;
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  fill_degree(n, k, 0, current, out);
  return out;
}

void for_each_below(const MultiIndex& upper, const std::function<void(const MultiIndex&)>& f) {
  std::vector<int> current(static_cast<std::size_t>(upper.dim()), 0);
  below_recursive(upper, 0, current, f);
}

void TruncationParams::validate() const {
  if (n < 1) throw UsageError("dimension n must be >= 1");
  if (degree_max < 0) throw UsageError("degree_max must be >= 0");
}

std::size_t TruncationParams::basis_size() const { return cumulative_size(degree_max); }

std::size_t TruncationParams::block_size(int k) const {
  if (k < 0) return 0;
  return static_cast<std::size_t>(binomial_u64(n + k - 1, k));
}

std::size_t TruncationParams::cumulative_size(int k) const {
  if (k < 0) return 0;
  return static_cast<std::size_t>(binomial_u64(n + k, n));
}

std::size_t max_basis_size() {
  if (const char* env = std::getenv("WICKLAB_MAX_BASIS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

void check_basis_budget(const TruncationParams& params) {
  params.validate();
  const std::size_t size = params.basis_size();
  if (size > max_basis_size()) {
    throw ResourceError("basis size C(n+N, n) = " + std::to_string(size) + " exceeds the budget of " +
                        std::to_string(max_basis_size()) + " (override with WICKLAB_MAX_BASIS)");
  }
}

FockBasis::FockBasis(const TruncationParams& params) : params_(params) {
  check_basis_budget(params);
  indices_.reserve(params.basis_size());
  offsets_.reserve(static_cast<std::size_t>(params.degree_max) + 2);
  for (int k = 0; k <= params.degree_max; ++k) {
    offsets_.push_back(indices_.size());
    auto block = indices_of_degree(params.n, k);
    indices_.insert(indices_.end(), block.begin(), block.end());
  }
  offsets_.push_back(indices_.size());
  lookup_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i], i);
}

std::ptrdiff_t FockBasis::find(const MultiIndex& alpha) const {
  if (alpha.dim() != params_.n || alpha.degree() > params_.degree_max) return -1;
  const auto it = lookup_.find(alpha);
  return it == lookup_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::shared_ptr<const FockBasis> make_basis(const TruncationParams& params) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const FockBasis>> cache;
  params.validate();
  const auto key = std::make_pair(params.n, params.degree_max);
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto basis = std::make_shared<const FockBasis>(params);
  cache.emplace(key, basis);
  return basis;
}

std::vector<MultiIndex> enumerate_basis(const TruncationParams& params) { return make_basis(params)->indices(); }

FockVector::FockVector(std::shared_ptr<const FockBasis> basis)
    : basis_(std::move(basis)), coeffs_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->size()))) {}

FockVector::FockVector(std::shared_ptr<const FockBasis> basis, Eigen::VectorXcd coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (static_cast<std::size_t>(coeffs_.size()) != basis_->size()) {
    throw UsageError("coefficient vector does not match the basis size");
  }
}

FockVector FockVector::zero(const TruncationParams& params) { return FockVector(make_basis(params)); }

FockVector FockVector::unit(const TruncationParams& params, const MultiIndex& alpha) {
  FockVector v(make_basis(params));
  const auto pos = v.basis().find(alpha);
  if (pos < 0) throw UsageError("multi-index outside the truncation");
  v.coeffs_[pos] = 1.0;
  return v;
}

cplx FockVector::coefficient(const MultiIndex& alpha) const {
  const auto pos = basis_->find(alpha);
  return pos < 0 ? cplx{} : coeffs_[pos];
}

FockVector FockVector::degree_component(int k) const {
  FockVector out(basis_);
  if (k < 0 || k > params().degree_max) return out;
  const auto lo = static_cast<Eigen::Index>(basis_->block_offset(k));
  const auto hi = static_cast<Eigen::Index>(basis_->block_offset(k + 1));
  out.coeffs_.segment(lo, hi - lo) = coeffs_.segment(lo, hi - lo);
  return out;
}

FockOperator::FockOperator(std::shared_ptr<const FockBasis> basis, Eigen::MatrixXcd matrix, DegreeShift shift)
    : basis_(std::move(basis)), matrix_(std::move(matrix)), shift_(shift) {
  const auto d = static_cast<Eigen::Index>(basis_->size());
  if (matrix_.rows() != d || matrix_.cols() != d) throw UsageError("operator matrix does not match the basis size");
}

FockOperator FockOperator::identity(const TruncationParams& params) {
  auto basis = make_basis(params);
  const auto d = static_cast<Eigen::Index>(basis->size());
  return FockOperator(basis, Eigen::MatrixXcd::Identity(d, d), {0, 0});
}

FockOperator FockOperator::zero(const TruncationParams& params) {
  auto basis = make_basis(params);
  const auto d = static_cast<Eigen::Index>(basis->size());
  return FockOperator(basis, Eigen::MatrixXcd::Zero(d, d), {0, 0});
}

FockOperator FockOperator::adjoint() const {
  return FockOperator(basis_, matrix_.adjoint(), {-shift_.max, -shift_.min});
}

FockVector FockOperator::apply(const FockVector& v) const {
  if (!(v.params() == params())) throw UsageError("operator and vector have different truncation params");
  return FockVector(basis_, matrix_ * v.coeffs());
}

Eigen::MatrixXcd FockOperator::block(int max_degree) const {
  const int d = std::clamp(max_degree, -1, params().degree_max);
  const auto size = static_cast<Eigen::Index>(basis_->block_offset(d + 1));
  return matrix_.topLeftCorner(size, size);
}

namespace {
void require_same(const FockOperator& a, const FockOperator& b) {
  if (!(a.params() == b.params())) throw UsageError("operators have different truncation params");
}
}  // namespace

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  require_same(a, b);
  return FockOperator(a.basis_, a.matrix_ * b.matrix_,
                      {a.shift_.min + b.shift_.min, a.shift_.max + b.shift_.max});
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  require_same(a, b);
  return FockOperator(a.basis_, a.matrix_ + b.matrix_,
                      {std::min(a.shift_.min, b.shift_.min), std::max(a.shift_.max, b.shift_.max)});
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  require_same(a, b);
  return FockOperator(a.basis_, a.matrix_ - b.matrix_,
                      {std::min(a.shift_.min, b.shift_.min), std::max(a.shift_.max, b.shift_.max)});
}

FockOperator operator*(cplx c, const FockOperator& a) { return FockOperator(a.basis_, c * a.matrix_, a.shift_); }

cplx inner_product(const FockVector& phi, const FockVector& psi) {
  if (!(phi.params() == psi.params())) throw UsageError("vectors have different truncation params");
  // Eigen's dot conjugates its first argument.
  return psi.coeffs().dot(phi.coeffs());
}

double sobolev_norm(const FockVector& phi, double s) {
  const auto& basis = phi.basis();
  double total = 0.0;
  for (int k = 0; k <= phi.params().degree_max; ++k) {
    const auto lo = static_cast<Eigen::Index>(basis.block_offset(k));
    const auto hi = static_cast<Eigen::Index>(basis.block_offset(k + 1));
    total += phi.coeffs().segment(lo, hi - lo).squaredNorm() * std::pow(1.0 + k, s);
  }
  return std::sqrt(total);
}

FockVector coherent_state(std::span<const cplx> z, const TruncationParams& params) {
  if (static_cast<int>(z.size()) != params.n) throw UsageError("coherent state point has the wrong dimension");
  auto basis = make_basis(params);
  Eigen::VectorXcd c(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const MultiIndex& alpha = (*basis)[i];
    cplx v = 1.0;
    for (int j = 0; j < params.n; ++j) {
      const int e = alpha[j];
      v *= std::pow(std::conj(z[static_cast<std::size_t>(j)]), e) / std::sqrt(factorial(e));
    }
    c[static_cast<Eigen::Index>(i)] = v;
  }
  return FockVector(basis, std::move(c));
}

double gaussian_moment(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.dim() != beta.dim()) throw UsageError("moment multi-indices have different dimensions");
  if (!(alpha == beta)) return 0.0;
  return factorial(alpha);
}

}  // namespace wicklab
