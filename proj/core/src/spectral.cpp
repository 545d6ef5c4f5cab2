#include "bergman/spectral.hpp"

#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Certified sum of sum_k term(k) q^k where |term(k)| = mod(k), mod(k)/(1+k)^g
// nonincreasing. Tail after D terms: mod(D+1) r^{D+1} / (1 - r e^{g/(2+D)}).
EvalResult certified_sum(const std::function<Complex(int)>& term,
                         const std::function<double(int)>& mod, Complex q,
                         double g, double tol, int k_cap) {
  const double r = std::abs(q);
  if (r >= 1.0) throw DomainError("spectral sum needs |x y| < 1");
  KahanSumComplex acc;
  Complex qp = 1.0;
  auto tail_at = [&](int D) {
    double growth = std::exp(g / (2.0 + D));
    if (r * growth >= 1.0) return std::numeric_limits<double>::infinity();
    return mod(D + 1) * std::pow(r, D + 1) / (1.0 - r * growth);
  };
  for (int k = 0; k <= k_cap; ++k, qp *= q) {
    acc.add(term(k) * qp);
    if ((k >= 8 && k % 16 == 0) || k == k_cap) {
      double tb = tail_at(k);
      if (tb <= tol) return {acc.value(), tb, k + 1};
    }
  }
  throw AccuracyError("spectral sum: cap reached before the tail certified",
                      acc.value(), tail_at(k_cap));
}

double positive_lambda(const SpectralModel& model, int k) {
  double l = model.lambda(k);
  if (!(l > 0.0))
    throw ValidityError("spectral model produced a nonpositive eigenvalue");
  return l;
}

}  // namespace

SpectralModel lambda0_model() {
  SpectralModel m;
  m.lambda = [](int k) { return 1.0 / (2.0 * (k + 1)); };
  m.tail_degree = 1.0;
  return m;
}

EvalResult spectral_kernel(const SpectralModel& model, Complex s, Complex x,
                           Complex y, double tol, int k_cap) {
  if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0)
    throw DomainError("spectral kernel needs interior points");
  const Complex q = x * std::conj(y);
  const Complex e = 2.0 * s - 1.0;
  const double sigma = 2.0 * s.real() - 1.0;
  const double g = std::max(0.0, -model.tail_degree * sigma);
  auto term = [&](int k) {
    return std::exp(e * std::log(positive_lambda(model, k))) / (2.0 * kPi);
  };
  auto mod = [&](int k) {
    return std::pow(positive_lambda(model, k), sigma) / (2.0 * kPi);
  };
  return certified_sum(term, mod, q, g, tol, k_cap);
}

EvalResult lambda0_direct_kernel(Complex s, Complex x, Complex y, double tol,
                                 int k_cap) {
  if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0)
    throw DomainError("spectral kernel needs interior points");
  const Complex q = x * std::conj(y);
  const Complex e = 1.0 - 2.0 * s;
  const double sigma = 1.0 - 2.0 * s.real();
  const double g = std::max(0.0, sigma);
  auto term = [e](int k) {
    return std::exp(e * std::log(2.0 * (k + 1))) / (2.0 * kPi);
  };
  auto mod = [sigma](int k) {
    return std::pow(2.0 * (k + 1), sigma) / (2.0 * kPi);
  };
  return certified_sum(term, mod, q, g, tol, k_cap);
}

Complex contour_integral(const SpectralModel& model, Complex lo, Complex hi,
                         Complex x, Complex y, int nodes_per_side,
                         double tol_each) {
  if (nodes_per_side < 1) throw ParameterError("contour needs at least one node");
  const Complex c0 = lo;
  const Complex c1(hi.real(), lo.imag());
  const Complex c2 = hi;
  const Complex c3(lo.real(), hi.imag());
  const Complex corners[5] = {c0, c1, c2, c3, c0};

  KahanSumComplex total;
  for (int side = 0; side < 4; ++side) {
    const Complex a = corners[side], b = corners[side + 1];
    // Composite Simpson per side: the integrand is smooth along each side
    // (corners are panel boundaries), so the error falls at fourth order in
    // the node spacing; a trapezoid rule here only manages second order and
    // its error grows visibly with the rectangle size.
    const int panels = nodes_per_side + (nodes_per_side % 2);
    const Complex dz = (b - a) / static_cast<double>(panels);
    KahanSumComplex acc;
    for (int j = 0; j <= panels; ++j) {
      Complex sj = a + (b - a) * (static_cast<double>(j) / panels);
      Complex f = spectral_kernel(model, sj, x, y, tol_each).value;
      double wgt = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      acc.add(f * wgt);
    }
    total.add(acc.value() * dz * (1.0 / 3.0));
  }
  return total.value();
}

std::function<Complex(int)> power_sequence(const SpectralModel& model, Complex s) {
  return [model, s](int k) {
    return std::exp(s * std::log(positive_lambda(model, k)));
  };
}

std::function<EvalResult(double)> make_spectral_diag(const SpectralModel& model,
                                                     double s, double rel_tol,
                                                     int k_cap) {
  return [model, s, rel_tol, k_cap](double rho) {
    if (rho <= 0.0 || rho >= 1.0)
      throw DomainError("boundary distance outside (0, 1)");
    double xr = std::sqrt(1.0 - rho);
    // Magnitude estimate from a plain partial sum, to set the absolute
    // tolerance the certified pass has to reach.
    double q = 1.0 - rho;
    KahanSum rough;
    double qp = 1.0;
    for (int k = 0; k <= std::min(k_cap, 2048); ++k, qp *= q)
      rough.add(std::pow(positive_lambda(model, k), 2.0 * s - 1.0) /
                (2.0 * kPi) * qp);
    double est = std::max(std::abs(rough.value()), 1e-300);
    return spectral_kernel(model, Complex(s, 0.0), Complex(xr, 0.0),
                           Complex(xr, 0.0), rel_tol * est, k_cap);
  };
}

}  // namespace bergman
