#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/kernels.hpp"
#include "bergman/special.hpp"
#include "bergman/toeplitz.hpp"

using bergman::Complex;

namespace {

constexpr double kPi = 3.14159265358979323846;

bergman::AngularWeightSpec radial_only(double alpha) {
  bergman::AngularWeightSpec w;
  w.radial = bergman::RadialWeightSpec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), alpha,
      bergman::OneFactor{}};
  w.terms = {bergman::AngularTerm{0, 0, Complex(1.0, 0.0)}};
  return w;
}

}  // namespace

TEST_CASE("the unit weight gives the identity section") {
  auto s = bergman::build_toeplitz(radial_only(0.0), 12);
  CHECK(s.size == 12);
  CHECK((s.T - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-14);
  for (int k = 0; k < 12; ++k) {
    CHECK(s.c(k) == doctest::Approx(kPi / (k + 1.0)).epsilon(1e-13));
  }
  CHECK(s.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a pure power weight gives a diagonal section with Beta ratios") {
  // w = (1 - |z|^2): <e_k, e_k>_w = mu_k(alpha=1)/c_k = 1/(k+2).
  auto s = bergman::build_toeplitz(radial_only(1.0), 6);
  for (int k = 0; k < 6; ++k) {
    for (int j = 0; j < 6; ++j) {
      Complex want = (j == k) ? Complex(1.0 / (k + 2.0), 0.0) : Complex(0.0, 0.0);
      CHECK(std::abs(s.T(j, k) - want) <= 1e-13);
    }
  }
}

TEST_CASE("kernel vectors and coefficient evaluation are consistent") {
  auto s = bergman::build_toeplitz(radial_only(0.0), 30);
  Complex x(0.4, -0.3);
  auto kx = bergman::kernel_vector(s, x);
  // (K_x)_k = conj(x^k) / sqrt(c_k).
  CHECK(std::abs(kx(0) - Complex(1.0, 0.0) / std::sqrt(kPi)) <= 1e-14);
  CHECK(std::abs(kx(2) - std::conj(x * x) / std::sqrt(kPi / 3.0)) <= 1e-14);
  // evaluate_coefficients(K_x, y) is the truncated unweighted kernel.
  Complex y(0.2, 0.5);
  Complex got = bergman::evaluate_coefficients(s, kx, y);
  bergman::KahanSumComplex direct;
  for (int k = 0; k < 30; ++k) {
    direct.add(std::pow(y, k) * std::conj(std::pow(x, k)) * (k + 1.0) / kPi);
  }
  CHECK(std::abs(got - direct.value()) <= 1e-13);
}

TEST_CASE("section inverse route matches a Gram matrix oracle") {
  bergman::AngularWeightSpec w;
  w.radial = bergman::RadialWeightSpec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.5,
      bergman::OneFactor{}};
  w.terms = {bergman::AngularTerm{0, 0, Complex(2.0, 0.0)},
             bergman::AngularTerm{1, 0, Complex(0.4, 0.2)},
             bergman::AngularTerm{0, 1, Complex(0.4, -0.2)}};
  const int N = 25;
  auto s = bergman::build_toeplitz(w, N);

  // Oracle: degree-<N weighted kernel from the monomial Gram matrix directly,
  // K_N(y, x) = v(x)^* M^{-1} v(y) with v(y)_k = y^k.
  auto gram = bergman::monomial_gram(w, N);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(gram.M);
  auto oracle = [&](Complex x, Complex y) {
    Eigen::VectorXcd vx(N), vy(N);
    for (int k = 0; k < N; ++k) {
      vx(k) = std::pow(x, k);
      vy(k) = std::pow(y, k);
    }
    return (vx.adjoint() * lu.solve(vy)).value();
  };

  std::vector<Complex> pts = {Complex(0.3, 0.0), Complex(-0.25, 0.15),
                              Complex(0.1, -0.45), Complex(0.0, 0.35)};
  for (Complex x : pts) {
    auto wk = bergman::weighted_kernel_via_inverse(s, x);
    CHECK_FALSE(wk.ill_conditioned);
    for (Complex y : pts) {
      Complex via = bergman::evaluate_coefficients(s, wk.h, y);
      Complex want = oracle(x, y);
      CHECK(std::abs(via - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("quadratic form routes agree and reduce to the plain kernel at A = I") {
  auto s = bergman::build_toeplitz(radial_only(0.0), 20);
  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(20, 20);
  Complex x(0.3, 0.2), y(-0.1, 0.4);
  Complex qf = bergman::quadratic_form_kernel(s, I, x, y);
  Complex inv = bergman::inverse_form_kernel(s, I, x, y);
  bergman::KahanSumComplex partial;
  for (int k = 0; k < 20; ++k) {
    partial.add(std::pow(x, k) * std::conj(std::pow(y, k)) * (k + 1.0) / kPi);
  }
  CHECK(std::abs(qf - partial.value()) <= 1e-13);
  CHECK(std::abs(inv - partial.value()) <= 1e-13);

  // A generic positive definite A: the two routes stay equal.
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(20, 20);
  for (int j = 0; j < 20; ++j) {
    for (int k = 0; k < 20; ++k) {
      B(j, k) = Complex(std::cos(1.0 + 3.0 * j + k), std::sin(2.0 * j - k)) / 20.0;
    }
  }
  Eigen::MatrixXcd A = B.adjoint() * B + I;
  Complex qa = bergman::quadratic_form_kernel(s, A, x, y);
  Complex ia = bergman::inverse_form_kernel(s, A, x, y);
  CHECK(std::abs(qa - ia) <= 1e-13 * std::max(1.0, std::abs(qa)));
}

TEST_CASE("deformed sections keep the conjugate symmetry of the kernel") {
  bergman::AngularWeightSpec w;
  w.radial = bergman::RadialWeightSpec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 1.0,
      bergman::OneFactor{}};
  w.terms = {bergman::AngularTerm{0, 0, Complex(1.5, 0.0)},
             bergman::AngularTerm{2, 1, Complex(0.1, -0.05)},
             bergman::AngularTerm{1, 2, Complex(0.1, 0.05)}};
  auto s = bergman::build_toeplitz(w, 20);
  std::vector<Complex> pts = {Complex(0.35, 0.1), Complex(-0.2, 0.25),
                              Complex(0.05, -0.4)};
  for (Complex x : pts) {
    auto hx = bergman::weighted_kernel_via_inverse(s, x);
    for (Complex y : pts) {
      auto hy = bergman::weighted_kernel_via_inverse(s, y);
      Complex kxy = bergman::evaluate_coefficients(s, hx.h, y);
      Complex kyx = bergman::evaluate_coefficients(s, hy.h, x);
      CHECK(std::abs(kxy - std::conj(kyx)) <= 1e-12);
    }
  }
}

TEST_CASE("indefinite weights are refused at build time") {
  bergman::AngularWeightSpec bad;
  bad.radial = bergman::RadialWeightSpec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.0,
      bergman::OneFactor{}};
  // 1 + 4 Re z is negative on part of the disc.
  bad.terms = {bergman::AngularTerm{0, 0, Complex(1.0, 0.0)},
               bergman::AngularTerm{1, 0, Complex(2.0, 0.0)},
               bergman::AngularTerm{0, 1, Complex(2.0, 0.0)}};
  CHECK_THROWS_AS(bergman::build_toeplitz(bad, 8), bergman::ValidityError);
  CHECK_THROWS_AS(bergman::build_toeplitz(radial_only(0.0), 0),
                  bergman::ParameterError);
}

TEST_CASE("points outside the disc are rejected") {
  auto s = bergman::build_toeplitz(radial_only(0.0), 10);
  CHECK_THROWS_AS(bergman::kernel_vector(s, Complex(1.2, 0.0)),
                  bergman::DomainError);
  CHECK_THROWS_AS(bergman::weighted_kernel_via_inverse(s, Complex(0.0, 1.01)),
                  bergman::DomainError);
}
