#pragma once

#include <vector>

namespace wicklab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Generalized Gauss-Laguerre rule for the probability weight
// t^a e^{-t} / Gamma(a + 1) on (0, inf), weights summing to 1.
// Rules are cached per (points, a).
const QuadratureRule& gauss_laguerre(int points, double a);

// Gauss-Legendre rule on [-1, 1], weights summing to 2.
const QuadratureRule& gauss_legendre(int points);

}  // namespace wicklab
