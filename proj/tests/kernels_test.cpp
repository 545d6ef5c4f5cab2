#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/kernels.hpp"
#include "bergman/special.hpp"

using bergman::Complex;

namespace {

constexpr double kPi = 3.14159265358979323846;

bergman::RadialWeightSpec disc_spec(double R, double alpha,
                                    bergman::Measure m = bergman::Measure::lebesgue) {
  return bergman::RadialWeightSpec{bergman::DomainSpec::disc(R, m), alpha,
                                   bergman::OneFactor{}};
}

}  // namespace

TEST_CASE("unweighted disc kernel matches its closed form") {
  auto k = bergman::kernel_from_moments(disc_spec(1.0, 0.0), 4000);
  std::array<std::pair<Complex, Complex>, 4> pts = {
      std::pair<Complex, Complex>{0.3, 0.2},
      {Complex(0.1, 0.4), Complex(-0.2, 0.3)},
      {Complex(-0.5, 0.0), Complex(0.0, 0.6)},
      {Complex(0.7, 0.1), Complex(0.65, -0.1)}};
  for (auto [x, y] : pts) {
    Complex closed = 1.0 / (kPi * std::pow(1.0 - x * std::conj(y), 2.0));
    auto r = bergman::evaluate1(k, x, y, 1e-13);
    CHECK(std::abs(r.value - closed) <= 1e-12 * std::abs(closed));
    CHECK(r.tail_bound <= 1e-13);
  }
}

TEST_CASE("radius enters the closed form through R^2") {
  double R = 2.0;
  auto k = bergman::kernel_from_moments(disc_spec(R, 0.0), 4000);
  Complex x(0.9, 0.3), y(-0.5, 1.1);
  Complex q = R * R - x * std::conj(y);
  Complex closed = R * R / (kPi * q * q);
  auto r = bergman::evaluate1(k, x, y, 1e-13);
  CHECK(std::abs(r.value - closed) <= 1e-12 * std::abs(closed));
}

TEST_CASE("weighted disc kernel matches the Beta closed form") {
  // For weight (1-|z|^2)^alpha the kernel is (alpha+1)/pi (1-x conj y)^(-alpha-2).
  double alpha = 1.5;
  auto k = bergman::kernel_from_moments(disc_spec(1.0, alpha), 4000);
  for (Complex t : {Complex(0.25, 0.0), Complex(0.1, -0.5), Complex(-0.6, 0.2)}) {
    Complex closed = (alpha + 1.0) / kPi * std::pow(1.0 - t, -alpha - 2.0);
    auto r = bergman::evaluate1(k, t, Complex(1.0, 0.0), 1e-13);
    CHECK(std::abs(r.value - closed) <= 1e-11 * std::abs(closed));
  }
}

TEST_CASE("ball kernel matches the closed form in two variables") {
  bergman::RadialWeightSpec spec{
      bergman::DomainSpec::ball(2, bergman::Measure::lebesgue), 0.0,
      bergman::OneFactor{}};
  auto k = bergman::kernel_from_moments(spec, 4000);
  std::vector<Complex> x = {Complex(0.3, 0.1), Complex(-0.2, 0.4)};
  std::vector<Complex> y = {Complex(0.1, -0.2), Complex(0.5, 0.0)};
  Complex inner = bergman::hermitian_inner(x, y);
  Complex closed = 2.0 / (kPi * kPi) * std::pow(1.0 - inner, -3.0);
  auto r = bergman::evaluate(k, x, y, 1e-13);
  CHECK(std::abs(r.value - closed) <= 1e-12 * std::abs(closed));
}

TEST_CASE("normalized measure fixes K(0,0) to one over the volume ratio") {
  auto k = bergman::kernel_from_moments(
      disc_spec(1.0, 0.0, bergman::Measure::normalized), 64);
  auto r = bergman::evaluate1(k, 0.0, 0.0, 1e-14);
  CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(r.value.imag() == 0.0);
}

TEST_CASE("evaluation is certified or refused") {
  auto k = bergman::kernel_from_moments(disc_spec(1.0, 0.0), 60);
  CHECK_THROWS_AS(bergman::evaluate1(k, Complex(0.95, 0.0), Complex(0.95, 0.0), 1e-10),
                  bergman::AccuracyError);
  CHECK_THROWS_AS(bergman::evaluate1(k, Complex(1.0, 0.0), Complex(1.0, 0.0), 1e-6),
                  bergman::DomainError);
  // The reported bound really covers the truncation error.
  auto big = bergman::kernel_from_moments(disc_spec(1.0, 0.0), 4000);
  Complex t(0.8, 0.05);
  auto loose = bergman::evaluate1(big, t, Complex(1.0, 0.0), 1e-4);
  auto tight = bergman::evaluate1(big, t, Complex(1.0, 0.0), 1e-13);
  CHECK(std::abs(loose.value - tight.value) <= loose.tail_bound + 1e-13);
  CHECK(loose.terms <= tight.terms);
}

TEST_CASE("kernel from prescribed norms reproduces the moment route") {
  // Squared norms of z^k in the unweighted disc space: c_k = pi / (k+1).
  std::vector<double> sq;
  for (int kk = 0; kk <= 800; ++kk) sq.push_back(kPi / (kk + 1.0));
  auto k = bergman::kernel_from_coefficients(sq, bergman::Measure::lebesgue, 3.0);
  Complex t(0.4, -0.3);
  Complex closed = 1.0 / (kPi * std::pow(1.0 - t, 2.0));
  auto r = bergman::evaluate1(k, t, Complex(1.0, 0.0), 1e-13);
  CHECK(std::abs(r.value - closed) <= 1e-12 * std::abs(closed));
}

TEST_CASE("rescaled norms with a scale parameter match the moment kernel") {
  double R = 2.0;
  auto ref = bergman::kernel_from_moments(disc_spec(R, 0.5), 600);
  std::vector<double> sq;
  for (int d = 0; d <= 600; ++d) {
    // c_d R^{-2d} = pi mu_d R^{-2d} = pi R^{2(1+alpha)} B(d+1, alpha+1); the
    // unscaled mu_d would overflow well before d = 600 when R = 2.
    sq.push_back(kPi * std::pow(R, 3.0) * bergman::beta_fn(d + 1.0, 1.5));
  }
  auto k = bergman::kernel_from_coefficients(sq, bergman::Measure::lebesgue, 3.5, R * R);
  Complex x(1.1, 0.4), y(0.7, -0.9);
  auto a = bergman::evaluate1(ref, x, y, 1e-12);
  auto b = bergman::evaluate1(k, x, y, 1e-12);
  CHECK(std::abs(a.value - b.value) <= 1e-11 * std::abs(a.value));
}

TEST_CASE("Hardy space kernel has constant coefficients") {
  auto k = bergman::szego_kernel(2000);
  CHECK(k.coefficient(0) == doctest::Approx(1.0 / (2.0 * kPi)));
  CHECK(k.coefficient(7) == doctest::Approx(1.0 / (2.0 * kPi)));
  Complex t(0.5, 0.2);
  Complex closed = 1.0 / (2.0 * kPi * (1.0 - t));
  auto r = bergman::evaluate1(k, t, Complex(1.0, 0.0), 1e-13);
  CHECK(std::abs(r.value - closed) <= 1e-12 * std::abs(closed));
}

TEST_CASE("slice of the lifted ball kernel agrees with the weighted disc") {
  std::vector<std::pair<Complex, Complex>> pairs = {
      {Complex(0.3, 0.1), Complex(0.2, -0.2)},
      {Complex(-0.4, 0.3), Complex(0.1, 0.5)},
      {Complex(0.0, 0.6), Complex(0.55, 0.0)}};
  auto res = bergman::forelli_rudin_check(1, pairs, 3000);
  CHECK(res.max_rel_dev <= 1e-12);
}

TEST_CASE("series constructors reject broken input") {
  CHECK_THROWS_AS(bergman::kernel_from_coefficients({}), bergman::ParameterError);
  CHECK_THROWS_AS(bergman::kernel_from_coefficients({1.0, -2.0, 1.0}),
                  bergman::ParameterError);
  CHECK_THROWS_AS(bergman::kernel_from_moments(disc_spec(1.0, 0.0), -1),
                  bergman::ParameterError);
}
