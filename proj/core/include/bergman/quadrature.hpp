#pragma once

#include <functional>
#include <vector>

namespace bergman {

// Gauss-Jacobi rule on [-1, 1] with weight (1-x)^alpha (1+x)^beta:
//   integral f(x) (1-x)^alpha (1+x)^beta dx  ~=  sum w_i f(x_i),
// exact for polynomial f up to degree 2n - 1. Requires alpha, beta > -1.
struct GaussJacobiRule {
  std::vector<double> x;  // nodes, descending in (-1, 1)
  std::vector<double> w;  // positive weights

  GaussJacobiRule(int n, double alpha, double beta);
};

// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance tol.
// Depth-limited; throws AccuracyError when the tolerance cannot be met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

}  // namespace bergman
