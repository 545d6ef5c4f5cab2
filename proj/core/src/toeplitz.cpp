#include "bergman/toeplitz.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FiniteSection build_toeplitz(const AngularWeightSpec& w, int N) {
  if (N < 1) throw ParameterError("finite section needs N >= 1");
  const DomainSpec& dom = w.radial.domain;
  if (dom.kind != DomainSpec::Kind::disc || dom.n != 1)
    throw ParameterError("finite sections are implemented on the disc");

  FiniteSection s;
  s.domain = dom;
  s.size = N;

  const double R2 = dom.radius_sq();
  s.c.resize(N);
  for (int k = 0; k < N; ++k)
    s.c(k) = kPi * std::pow(R2, k + 1) / (k + 1);

  GramMatrix gram = monomial_gram(w, N);
  s.T.resize(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k)
      s.T(j, k) = gram.M(j, k) / std::sqrt(s.c(j) * s.c(k));
  // Exact Hermitian symmetry, then a spectral positivity certificate.
  s.T = ((s.T + s.T.adjoint()) * 0.5).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.T, Eigen::EigenvaluesOnly);
  s.min_eigenvalue = es.eigenvalues().minCoeff();
  double max_eig = es.eigenvalues().maxCoeff();
  if (!(s.min_eigenvalue > 0.0))
    throw ValidityError("Toeplitz section is not positive definite");
  s.condition = max_eig / s.min_eigenvalue;
  return s;
}

Eigen::VectorXcd kernel_vector(const FiniteSection& s, Complex x) {
  if (std::norm(x) >= s.domain.radius_sq())
    throw DomainError("kernel vector needs an interior point");
  Eigen::VectorXcd v(s.size);
  Complex p = 1.0;
  for (int k = 0; k < s.size; ++k, p *= x)
    v(k) = std::conj(p) / std::sqrt(s.c(k));
  return v;
}

Complex evaluate_coefficients(const FiniteSection& s, const Eigen::VectorXcd& h,
                              Complex y) {
  if (h.size() != s.size)
    throw ParameterError("coefficient vector does not match the section size");
  KahanSumComplex sum;
  Complex p = 1.0;
  for (int k = 0; k < s.size; ++k, p *= y)
    sum.add(h(k) * p / std::sqrt(s.c(k)));
  return sum.value();
}

WeightedKernelVector weighted_kernel_via_inverse(const FiniteSection& s, Complex x) {
  WeightedKernelVector out;
  out.x = x;
  out.ill_conditioned = s.condition > 1e12;
  Eigen::LLT<Eigen::MatrixXcd> llt(s.T);
  if (llt.info() != Eigen::Success)
    throw ValidityError("Cholesky failed on a section certified positive definite");
  // The coefficients of K_w(., x) in the base satisfy T^t h = K_x; with T
  // Hermitian this is h = conj(T^{-1} conj(K_x)). For real Gram matrices the
  // conjugations cancel, but complex angular weights need them.
  out.h = llt.solve(kernel_vector(s, x).conjugate()).conjugate();
  return out;
}

Complex quadratic_form_kernel(const FiniteSection& s, const Eigen::MatrixXcd& A,
                              Complex x, Complex y) {
  if (A.rows() != s.size || A.cols() != s.size)
    throw ParameterError("form size does not match the section");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
    throw ValidityError("quadratic form is not positive definite");
  // T^{-1} = A^{-1/2} through the eigendecomposition.
  Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXcd root = es.eigenvectors() * inv_sqrt.asDiagonal() *
                          es.eigenvectors().adjoint();
  Eigen::VectorXcd ux = root * kernel_vector(s, x);
  Eigen::VectorXcd uy = root * kernel_vector(s, y);
  // <T^{-1}K_y, T^{-1}K_x> = (T^{-1}K_x)^* (T^{-1}K_y)
  return (ux.adjoint() * uy)(0, 0);
}

Complex inverse_form_kernel(const FiniteSection& s, const Eigen::MatrixXcd& A,
                            Complex x, Complex y) {
  if (A.rows() != s.size || A.cols() != s.size)
    throw ParameterError("form size does not match the section");
  Eigen::LLT<Eigen::MatrixXcd> llt(A);
  if (llt.info() != Eigen::Success)
    throw ValidityError("quadratic form is not positive definite");
  Eigen::VectorXcd sol = llt.solve(kernel_vector(s, y));
  return (kernel_vector(s, x).adjoint() * sol)(0, 0);
}

}  // namespace bergman
