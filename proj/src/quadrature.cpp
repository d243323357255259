#include "wicklab/quadrature.h"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "wicklab/errors.h"

namespace wicklab {

namespace {

// Nodes are the eigenvalues of the Jacobi matrix (Golub-Welsch). Weights come
// from the Christoffel function 1 / sum_j p_j(t)^2 of the orthonormal
// polynomials, run with a log scale so the far nodes underflow to zero
// instead of overflowing. Both steps are O(m^2).
QuadratureRule jacobi_rule(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double total_mass) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw QuadratureError("Jacobi matrix eigensolve failed");
  const auto m = diag.size();
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double t = solver.eigenvalues()[i];
    double prev = 0.0;
    double cur = 1.0;
    double sum = 1.0;
    double log_scale = 0.0;
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
      const double next = ((t - diag[j]) * cur - (j > 0 ? offdiag[j - 1] * prev : 0.0)) / offdiag[j];
      prev = cur;
      cur = next;
      sum += cur * cur;
      if (std::abs(cur) > 1e100) {
        prev *= 1e-100;
        cur *= 1e-100;
        sum *= 1e-200;
        log_scale += 100.0 * std::log(10.0);
      }
    }
    rule.nodes[static_cast<std::size_t>(i)] = t;
    rule.weights[static_cast<std::size_t>(i)] = total_mass * std::exp(-std::log(sum) - 2.0 * log_scale);
  }
  return rule;
}

QuadratureRule build_laguerre(int m, double a) {
  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(m > 1 ? m - 1 : 0);
  for (int i = 0; i < m; ++i) diag[i] = 2.0 * i + a + 1.0;
  for (int i = 1; i < m; ++i) off[i - 1] = std::sqrt(i * (i + a));
  return jacobi_rule(diag, off, 1.0);
}

QuadratureRule build_legendre(int m) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd off(m > 1 ? m - 1 : 0);
  for (int i = 1; i < m; ++i) off[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);
  return jacobi_rule(diag, off, 2.0);
}

}  // namespace

const QuadratureRule& gauss_laguerre(int points, double a) {
  if (points < 1) throw UsageError("quadrature needs at least one node");
  if (!(a > -1.0)) throw UsageError("Laguerre parameter must exceed -1");
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{points, a}];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_laguerre(points, a));
  return *slot;
}

const QuadratureRule& gauss_legendre(int points) {
  if (points < 1) throw UsageError("quadrature needs at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[points];
  if (!slot) slot = std::make_unique<QuadratureRule>(build_legendre(points));
  return *slot;
}

}  // namespace wicklab
