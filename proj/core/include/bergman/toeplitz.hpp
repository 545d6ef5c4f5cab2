#pragma once

#include <Eigen/Core>
#include <complex>

#include "bergman/domain.hpp"
#include "bergman/moments.hpp"

namespace bergman {

// Finite section of a Toeplitz operator on the disc Bergman space, expressed
// in the orthonormal basis e_k = z^k / sqrt(c_k) of the unweighted space so
// that conditioning reflects the operator rather than the monomial basis.
// T_jk = M_jk / sqrt(c_j c_k) with M the monomial Gram matrix of the weight.
struct FiniteSection {
  DomainSpec domain;
  int size = 0;
  Eigen::MatrixXcd T;
  Eigen::VectorXd c;        // unweighted squared norms c_k = pi R^{2k+2}/(k+1)
  double min_eigenvalue = 0.0;
  double condition = 0.0;
};

// Builds the section and checks positive definiteness; throws ValidityError
// when the weight fails to produce one.
FiniteSection build_toeplitz(const AngularWeightSpec& w, int N);

// Coefficients of K_x = K(., x) in the orthonormal basis: (K_x)_k = conj(e_k(x)).
Eigen::VectorXcd kernel_vector(const FiniteSection& s, Complex x);

// Evaluate a coefficient vector as a function: sum_k h_k e_k(y).
Complex evaluate_coefficients(const FiniteSection& s, const Eigen::VectorXcd& h,
                              Complex y);

// Truncated weighted kernel through the section inverse: h holds the
// degree-<N coefficients of K_w(., x) in the orthonormal basis, obtained from
// T^t h = K_x (equivalently h = conj(T^{-1} conj(K_x)) for Hermitian T) by
// Cholesky. A condition number above 1e12 sets the warning flag on the result.
struct WeightedKernelVector {
  Eigen::VectorXcd h;
  Complex x;
  bool ill_conditioned = false;
};
WeightedKernelVector weighted_kernel_via_inverse(const FiniteSection& s, Complex x);

// <T^{-1} K_y, T^{-1} K_x> with T = A^{1/2} by Hermitian eigendecomposition,
// for a positive definite coefficient form A in the orthonormal basis.
Complex quadratic_form_kernel(const FiniteSection& s, const Eigen::MatrixXcd& A,
                              Complex x, Complex y);

// Same value through the inverse directly: sum_jk (A^{-1})_kj e_j(x) conj(e_k(y)).
// Kept separate so the two routes can be compared.
Complex inverse_form_kernel(const FiniteSection& s, const Eigen::MatrixXcd& A,
                            Complex x, Complex y);

}  // namespace bergman
