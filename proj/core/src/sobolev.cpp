#include "bergman/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"

namespace bergman {

namespace {
constexpr double kPi = 3.14159265358979323846;

using Tag = NormVariant::Tag;

bool weak_hypothesis(Tag t) {
  return t == Tag::gradient_sum || t == Tag::top_plus_mass || t == Tag::top_plus_jet;
}

void validate(const NormVariant& v) {
  if (v.domain.kind != DomainSpec::Kind::disc || v.domain.n != 1)
    throw ParameterError("norm variants are implemented on the disc");
  if (v.m < 0) throw ParameterError("norm variant needs m >= 0");
  if (weak_hypothesis(v.tag)) {
    if (!(v.m > v.s - 0.5))
      throw ParameterError("variant hypothesis m > s - 1/2 violated");
  } else if (!(v.m > 2.0 * v.s - 1.0)) {
    throw ParameterError("variant hypothesis m > 2s - 1 violated");
  }
}

// (k!/(k-j)!)^2, zero when j > k.
double falling_sq(int k, int j) {
  if (j > k) return 0.0;
  double f = 1.0;
  for (int i = 0; i < j; ++i) f *= static_cast<double>(k - i);
  return f * f;
}

}  // namespace

CoefficientForm coefficient_form(const NormVariant& v, int k_max) {
  validate(v);
  if (k_max < 1) throw ParameterError("coefficient form needs k_max >= 1");

  const double R2 = v.domain.radius_sq();
  const double beta = 2.0 * v.m - 2.0 * v.s;
  const int m = v.m;

  // W(k) R^{-2k} = pi R^{2 beta + 2} B(k+1, beta+1), by the recurrence
  // B(k+2, beta+1) = B(k+1, beta+1) (k+1)/(k+beta+2) from B(1, beta+1).
  std::vector<double> w(k_max + 1);
  double b = 1.0 / (beta + 1.0);
  const double pref = kPi * std::pow(R2, beta + 1.0);
  for (int k = 0; k <= k_max; ++k) {
    w[k] = pref * b;
    b *= (k + 1.0) / (k + beta + 2.0);
  }

  CoefficientForm form;
  form.variant = v;
  form.scale = R2;
  form.scaled.assign(k_max + 1, 0.0);

  for (int k = 0; k <= k_max; ++k) {
    double q = 0.0;
    switch (v.tag) {
      case Tag::derivative_sum:
      case Tag::gradient_sum: {
        double rj = 1.0;  // R^{-2j}
        for (int j = 0; j <= std::min(m, k); ++j, rj /= R2)
          q += falling_sq(k, j) * w[k - j] * rj;
        break;
      }
      case Tag::normal_sum:
      case Tag::radial_sum: {
        double sum = 0.0, kp = 1.0;
        for (int j = 0; j <= m; ++j, kp *= static_cast<double>(k) * k) sum += kp;
        q = sum * w[k];
        break;
      }
      case Tag::top_plus_mass:
        q = w[k];
        if (k >= m) q += falling_sq(k, m) * w[k - m] * std::pow(R2, -m);
        break;
      case Tag::top_plus_jet:
        if (k >= m) {
          q = falling_sq(k, m) * w[k - m] * std::pow(R2, -m);
        } else {
          double f = 1.0;
          for (int i = 2; i <= k; ++i) f *= i;  // k!
          q = f * f * std::pow(R2, -k);
        }
        break;
      case Tag::radial_top_plus_mass:
        q = (1.0 + std::pow(static_cast<double>(k), 2 * m)) * w[k];
        break;
    }
    if (!(q > 0.0) || !std::isfinite(q))
      throw ValidityError("coefficient form produced a nonpositive norm");
    form.scaled[k] = q;
  }
  return form;
}

DiagonalKernelSeries sobolev_kernel(const CoefficientForm& form) {
  DiagonalKernelSeries k = kernel_from_coefficients(form.scaled, Measure::lebesgue,
                                                    -1.0, form.scale);
  return k;
}

HarmonicKernel harmonic_sobolev_kernel(const CoefficientForm& form) {
  if (form.variant.space != NormVariant::Space::harmonic)
    throw ParameterError("harmonic kernel needs a harmonic-space variant");
  return HarmonicKernel{sobolev_kernel(form)};
}

EvalResult evaluate_harmonic(const HarmonicKernel& k, Complex x, Complex y,
                             double tol) {
  EvalResult fwd = evaluate1(k.half, x, y, tol * 0.5);
  EvalResult bwd = evaluate1(k.half, y, x, tol * 0.5);
  EvalResult out;
  out.value = fwd.value + bwd.value - k.half.coefficient(0);
  out.tail_bound = fwd.tail_bound + bwd.tail_bound;
  out.terms = std::max(fwd.terms, bwd.terms);
  return out;
}

RatioRange equivalence_ratio(const CoefficientForm& a, const CoefficientForm& b,
                             int k_lo, int k_hi) {
  if (a.variant.m != b.variant.m || a.variant.s != b.variant.s ||
      a.variant.space != b.variant.space)
    throw ParameterError("equivalence ratio needs matching (m, s, space)");
  if (a.scale != b.scale)
    throw ParameterError("equivalence ratio needs matching radii");
  if (k_lo < 0 || k_hi > std::min(a.max_degree(), b.max_degree()) || k_lo > k_hi)
    throw ParameterError("equivalence ratio range out of bounds");
  RatioRange r;
  r.inf = std::numeric_limits<double>::infinity();
  r.sup = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    double q = a.scaled_value(k) / b.scaled_value(k);
    r.inf = std::min(r.inf, q);
    r.sup = std::max(r.sup, q);
  }
  return r;
}

}  // namespace bergman
