#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/special.hpp"

TEST_CASE("Gauss-Legendre special case integrates monomials") {
  bergman::GaussJacobiRule rule(6, 0.0, 0.0);
  double s0 = 0.0, s2 = 0.0, s10 = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    s0 += rule.w[i];
    s2 += rule.w[i] * rule.x[i] * rule.x[i];
    s10 += rule.w[i] * std::pow(rule.x[i], 10);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Jacobi rule matches Beta-type closed forms") {
  // integral over [-1,1] of (1-x)^a (1+x)^b = 2^(a+b+1) B(a+1, b+1).
  double a = 0.5, b = 1.25;
  bergman::GaussJacobiRule rule(8, a, b);
  double mass = 0.0, first = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    mass += rule.w[i];
    first += rule.w[i] * rule.x[i];
  }
  double expect_mass = std::pow(2.0, a + b + 1.0) * bergman::beta_fn(a + 1.0, b + 1.0);
  CHECK(mass == doctest::Approx(expect_mass).epsilon(1e-13));
  // First moment from the shifted Beta integral: with x = 2t - 1,
  // integral x (1-x)^a (1+x)^b dx = 2^(a+b+1) (2 B(a+1,b+2) - B(a+1,b+1)).
  double expect_first = std::pow(2.0, a + b + 1.0) *
                        (2.0 * bergman::beta_fn(a + 1.0, b + 2.0) -
                         bergman::beta_fn(a + 1.0, b + 1.0));
  CHECK(first == doctest::Approx(expect_first).epsilon(1e-12));
}

TEST_CASE("rule exactness degree: small rule equals large rule on polynomials") {
  bergman::GaussJacobiRule small(3, 0.5, 0.25);
  bergman::GaussJacobiRule large(12, 0.5, 0.25);
  auto poly = [](double x) { return ((x - 0.3) * x + 1.7) * x - 0.2; };
  double vs = 0.0, vl = 0.0;
  for (std::size_t i = 0; i < small.x.size(); ++i) vs += small.w[i] * poly(small.x[i]);
  for (std::size_t i = 0; i < large.x.size(); ++i) vl += large.w[i] * poly(large.x[i]);
  CHECK(vs == doctest::Approx(vl).epsilon(1e-13));
}

TEST_CASE("nodes are interior and descending, weights positive") {
  bergman::GaussJacobiRule rule(24, 1.5, -0.5);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    CHECK(rule.x[i] > -1.0);
    CHECK(rule.x[i] < 1.0);
    CHECK(rule.w[i] > 0.0);
    if (i > 0) CHECK(rule.x[i] < rule.x[i - 1]);
  }
}

TEST_CASE("invalid Jacobi parameters are rejected") {
  CHECK_THROWS_AS(bergman::GaussJacobiRule(4, -1.0, 0.0), bergman::ParameterError);
  CHECK_THROWS_AS(bergman::GaussJacobiRule(0, 0.0, 0.0), bergman::ParameterError);
}

TEST_CASE("adaptive Simpson on smooth integrands") {
  double v = bergman::adaptive_simpson([](double x) { return std::exp(x); }, 0.0,
                                       1.0, 1e-12);
  CHECK(v == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));
  double w = bergman::adaptive_simpson([](double x) { return std::cos(3.0 * x); },
                                       0.0, 2.0, 1e-12);
  CHECK(w == doctest::Approx(std::sin(6.0) / 3.0).epsilon(1e-10));
}

TEST_CASE("adaptive Simpson reports unreachable tolerances") {
  CHECK_THROWS_AS(bergman::adaptive_simpson(
                      [](double x) { return std::sin(1000.0 * x); }, 0.0, 1.0,
                      1e-14, 3),
                  bergman::AccuracyError);
}
