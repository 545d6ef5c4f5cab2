#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bergman/domain.hpp"
#include "bergman/errors.hpp"

using bergman::Complex;

TEST_CASE("volumes of the model domains") {
  CHECK(bergman::DomainSpec::disc(2.0).volume() ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(bergman::DomainSpec::ball(1).volume() ==
        doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(bergman::DomainSpec::ball(3).volume() ==
        doctest::Approx(std::pow(M_PI, 3) / 6.0).epsilon(1e-14));
}

TEST_CASE("polarized boundary distance") {
  auto d = bergman::DomainSpec::disc(2.0);
  bergman::Point x = {Complex(0.5, 0.5)};
  bergman::Point y = {Complex(1.0, -0.25)};
  Complex expect = 4.0 - Complex(0.5, 0.5) * std::conj(Complex(1.0, -0.25));
  CHECK(std::abs(bergman::rho_ext(d, x, y) - expect) <= 1e-15);
  bergman::Point z = {Complex(0.6, -0.8)};
  CHECK(bergman::rho_value(d, z) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("power-weight leading constants") {
  auto lc = bergman::leading_constant(bergman::DomainSpec::disc(1.0),
                                      bergman::PowerWeightLaw{0.0, 0.0});
  CHECK(lc.exponent == doctest::Approx(2.0));
  CHECK(lc.constant == doctest::Approx(1.0 / M_PI).epsilon(1e-13));
  CHECK_FALSE(lc.log_case);

  auto lc2 = bergman::leading_constant(bergman::DomainSpec::disc(2.0),
                                       bergman::PowerWeightLaw{0.0, 0.0});
  CHECK(lc2.constant == doctest::Approx(4.0 / M_PI).epsilon(1e-13));

  auto lc3 = bergman::leading_constant(bergman::DomainSpec::disc(1.0),
                                       bergman::PowerWeightLaw{1.5, 0.0});
  CHECK(lc3.exponent == doctest::Approx(3.5));
  CHECK(lc3.constant ==
        doctest::Approx(std::tgamma(3.5) / (std::tgamma(2.5) * M_PI))
            .epsilon(1e-13));

  // Normalized measure multiplies by the volume.
  auto lcn = bergman::leading_constant(
      bergman::DomainSpec::disc(1.0, bergman::Measure::normalized),
      bergman::PowerWeightLaw{0.0, 0.0});
  CHECK(lcn.constant == doctest::Approx(1.0).epsilon(1e-13));

  // A boundary factor e^g divides the constant.
  auto lcg = bergman::leading_constant(bergman::DomainSpec::disc(1.0),
                                       bergman::PowerWeightLaw{0.0, 1.0});
  CHECK(lcg.constant == doctest::Approx(1.0 / (M_PI * std::exp(1.0))).epsilon(1e-13));

  // Ball of dimension 2: exponent n + 1 = 3, constant n!/pi^n * ... = 2/pi^2.
  auto lcb = bergman::leading_constant(bergman::DomainSpec::ball(2),
                                       bergman::PowerWeightLaw{0.0, 0.0});
  CHECK(lcb.exponent == doctest::Approx(3.0));
  CHECK(lcb.constant == doctest::Approx(2.0 / (M_PI * M_PI)).epsilon(1e-13));
}

TEST_CASE("derivative and normal norm constants scale by radius powers") {
  int m = 2;
  double s = 0.3;
  auto sharp = bergman::leading_constant(bergman::DomainSpec::disc(2.0),
                                         bergman::DerivativeNormLaw{m, s});
  auto flat = bergman::leading_constant(bergman::DomainSpec::disc(2.0),
                                        bergman::NormalNormLaw{m, s});
  CHECK(sharp.exponent == doctest::Approx(2.0 - 2.0 * s));
  CHECK(flat.exponent == doctest::Approx(2.0 - 2.0 * s));
  CHECK(sharp.constant / flat.constant ==
        doctest::Approx(std::pow(2.0, 2.0 * m)).epsilon(1e-12));
  double base = std::tgamma(2.0 - 2.0 * s) /
                (std::tgamma(2.0 * m - 2.0 * s + 1.0) * M_PI);
  // Scaled-coefficient asymptotics put R^(2-2m) on the derivative-sum
  // constant and R^(2-4m) on the normal-derivative one.
  CHECK(sharp.constant ==
        doctest::Approx(base * std::pow(2.0, 2.0 - 2.0 * m)).epsilon(1e-12));
  CHECK(flat.constant ==
        doctest::Approx(base * std::pow(2.0, 2.0 - 4.0 * m)).epsilon(1e-12));
}

TEST_CASE("degenerate Gamma factor switches to the log branch") {
  // n - 2s + 1 = -1 at s = 1.5 on the disc; m = 3 keeps the order hypothesis
  // m > 2s - 1 satisfied.
  auto lc = bergman::leading_constant(bergman::DomainSpec::disc(1.0),
                                      bergman::DerivativeNormLaw{3, 1.5});
  CHECK(lc.log_case);
  CHECK(lc.log_index == 1);
  // Replacement factor (-1)^(k+1)/k! = +1 for k = 1; Gamma(2m - 2s + 1) =
  // Gamma(4) = 6.
  CHECK(lc.constant ==
        doctest::Approx(1.0 / (6.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("spectral order law and its displayed variant") {
  double s = 0.25;
  auto lc = bergman::leading_constant(bergman::DomainSpec::disc(1.0),
                                      bergman::SpectralOrderLaw{s});
  CHECK(lc.exponent == doctest::Approx(2.0 - 2.0 * s));
  CHECK(lc.constant ==
        doctest::Approx(std::tgamma(1.5) * std::pow(2.0, -0.5) / M_PI)
            .epsilon(1e-13));
  double displayed = bergman::spectral_order_displayed_constant(
      bergman::DomainSpec::disc(1.0), s);
  CHECK(lc.constant / displayed ==
        doctest::Approx(std::pow(2.0, -2.0 * s)).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(bergman::DomainSpec::disc(-1.0), bergman::ParameterError);
  CHECK_THROWS_AS(bergman::DomainSpec::ball(0), bergman::ParameterError);
  CHECK_THROWS_AS(
      bergman::leading_constant(bergman::DomainSpec::disc(1.0),
                                bergman::PowerWeightLaw{-1.0, 0.0}),
      bergman::ParameterError);
}
