#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bergman/errors.hpp"
#include "bergman/sobolev.hpp"
#include "bergman/special.hpp"

using bergman::Complex;
using Tag = bergman::NormVariant::Tag;
using Space = bergman::NormVariant::Space;

namespace {

constexpr double kPi = 3.14159265358979323846;

bergman::NormVariant variant(Tag tag, int m, double s, double R = 1.0,
                             Space space = Space::holomorphic) {
  bergman::NormVariant v;
  v.tag = tag;
  v.m = m;
  v.s = s;
  v.space = space;
  v.domain = bergman::DomainSpec::disc(R);
  return v;
}

}  // namespace

TEST_CASE("low-degree norms match hand-computed Beta sums") {
  // derivative_sum, m = 1, s = 1/2, R = 1: Q_1 = W(1) + W(0) with beta = 1,
  // so Q_1 = pi (B(2,2) + B(1,2)) = 2 pi / 3.
  auto d = bergman::coefficient_form(variant(Tag::derivative_sum, 1, 0.5), 50);
  CHECK(d.scaled_value(1) == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-13));

  // normal_sum, m = 1, s = 1/4: Q_2 = (1 + 2^2) W(2) with beta = 3/2,
  // so Q_2 = 5 pi B(3, 5/2) = 16 pi / 63.
  auto n = bergman::coefficient_form(variant(Tag::normal_sum, 1, 0.25), 50);
  CHECK(n.scaled_value(2) == doctest::Approx(16.0 * kPi / 63.0).epsilon(1e-13));
}

TEST_CASE("all variants collapse to the plain weighted norm at m = 0") {
  double s = -0.2;
  auto a = bergman::coefficient_form(variant(Tag::derivative_sum, 0, s), 2000);
  auto b = bergman::coefficient_form(variant(Tag::normal_sum, 0, s), 2000);
  auto c = bergman::coefficient_form(variant(Tag::radial_sum, 0, s), 2000);
  auto g = bergman::coefficient_form(variant(Tag::gradient_sum, 0, s), 2000);
  for (int k : {0, 1, 7, 150, 2000}) {
    double ref = a.scaled_value(k);
    CHECK(b.scaled_value(k) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(c.scaled_value(k) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(g.scaled_value(k) == doctest::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("variant hypotheses are enforced") {
  CHECK_THROWS_AS(bergman::coefficient_form(variant(Tag::derivative_sum, 0, 0.8), 10),
                  bergman::ParameterError);
  CHECK_THROWS_AS(bergman::coefficient_form(variant(Tag::gradient_sum, 0, 0.8), 10),
                  bergman::ParameterError);
  // At m = 1, s = 1.2 the weak hypothesis m > s - 1/2 holds for the gradient
  // family while the strict one m > 2s - 1 fails for the derivative family.
  CHECK_NOTHROW(bergman::coefficient_form(variant(Tag::gradient_sum, 1, 1.2), 10));
  CHECK_THROWS_AS(bergman::coefficient_form(variant(Tag::derivative_sum, 1, 1.2), 10),
                  bergman::ParameterError);
  CHECK_THROWS_AS(bergman::coefficient_form(variant(Tag::derivative_sum, -1, 0.0), 10),
                  bergman::ParameterError);
}

TEST_CASE("norms grow with the smoothness parameter") {
  auto lo = bergman::coefficient_form(variant(Tag::derivative_sum, 2, 0.4), 100);
  auto hi = bergman::coefficient_form(variant(Tag::derivative_sum, 2, 0.6), 100);
  for (int k : {5, 20, 100}) {
    CHECK(hi.scaled_value(k) > lo.scaled_value(k));
  }
}

TEST_CASE("the radius enters through a single power at high degree") {
  // Rescaled norms carry R^{2 beta + 2 - 2m} at leading order; R = 2, m = 1,
  // s = 1/2 gives beta = 1 and the factor 2^(2*1+2-2) = 4.
  auto r1 = bergman::coefficient_form(variant(Tag::derivative_sum, 1, 0.5, 1.0), 5000);
  auto r2 = bergman::coefficient_form(variant(Tag::derivative_sum, 1, 0.5, 2.0), 5000);
  double ratio = r2.scaled_value(5000) / r1.scaled_value(5000);
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("kernel coefficients invert the norms") {
  auto form = bergman::coefficient_form(variant(Tag::derivative_sum, 1, 0.5), 400);
  auto k = bergman::sobolev_kernel(form);
  CHECK(k.coefficient(1) == doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-12));
  auto r = bergman::evaluate1(k, Complex(0.3, 0.1), Complex(0.2, -0.2), 1e-12);
  CHECK(std::isfinite(r.value.real()));
  CHECK(r.tail_bound <= 1e-12);
}

TEST_CASE("harmonic kernels double the holomorphic diagonal minus the constant") {
  auto form = bergman::coefficient_form(
      variant(Tag::derivative_sum, 1, 0.3, 1.0, Space::harmonic), 800);
  auto hk = bergman::harmonic_sobolev_kernel(form);
  Complex x(0.35, -0.2);
  auto diag = bergman::evaluate_harmonic(hk, x, x, 1e-12);
  auto half = bergman::evaluate1(hk.half, x, x, 1e-13);
  double want = 2.0 * half.value.real() - hk.half.coefficient(0);
  CHECK(diag.value.real() == doctest::Approx(want).epsilon(1e-11));
  CHECK(std::abs(diag.value.imag()) <= 1e-12);
  // Hermitian symmetry at distinct points.
  Complex y(-0.1, 0.4);
  auto kxy = bergman::evaluate_harmonic(hk, x, y, 1e-12);
  auto kyx = bergman::evaluate_harmonic(hk, y, x, 1e-12);
  CHECK(std::abs(kxy.value - std::conj(kyx.value)) <= 1e-11);

  CHECK_THROWS_AS(bergman::harmonic_sobolev_kernel(bergman::coefficient_form(
                      variant(Tag::derivative_sum, 1, 0.3), 100)),
                  bergman::ParameterError);
}

TEST_CASE("equivalence ratios are positive and finite for matching parameters") {
  auto a = bergman::coefficient_form(variant(Tag::derivative_sum, 2, 0.6), 3000);
  auto b = bergman::coefficient_form(variant(Tag::top_plus_mass, 2, 0.6), 3000);
  auto r = bergman::equivalence_ratio(a, b, 10, 3000);
  CHECK(r.inf > 0.0);
  CHECK(std::isfinite(r.sup));
  CHECK(r.sup >= r.inf);

  auto other = bergman::coefficient_form(variant(Tag::derivative_sum, 1, 0.5), 3000);
  CHECK_THROWS_AS(bergman::equivalence_ratio(a, other, 10, 3000),
                  bergman::ParameterError);
  CHECK_THROWS_AS(bergman::equivalence_ratio(a, b, 10, 5000),
                  bergman::ParameterError);
}
