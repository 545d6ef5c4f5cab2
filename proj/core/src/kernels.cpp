#include "bergman/kernels.hpp"

#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {
constexpr double kPi = 3.14159265358979323846;

double pow_pi(int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= kPi;
  return v;
}

// Least-squares slope of log coef vs log(1+d) over the trailing span,
// used when no growth degree is declared.
double estimate_growth(const std::vector<double>& coef) {
  const int dmax = static_cast<int>(coef.size()) - 1;
  if (dmax < 16) return 1.0;
  int lo = std::max(4, dmax / 8);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int d = lo; d <= dmax; d += std::max(1, (dmax - lo) / 128)) {
    double lx = std::log1p(static_cast<double>(d));
    double ly = std::log(coef[d]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return std::max(0.0, std::ceil(slope + 0.5));
}

}  // namespace

void finalize_series(DiagonalKernelSeries& k) {
  if (k.coef.empty()) throw ParameterError("DiagonalKernelSeries: no coefficients");
  for (double c : k.coef)
    if (!(c > 0.0) || !std::isfinite(c))
      throw ValidityError("DiagonalKernelSeries: coefficients must be positive finite");
  const int dmax = k.max_degree();
  k.tail_env.assign(dmax + 2, 0.0);
  // Beyond the stored range the envelope is extended by its last value: the
  // declared growth strictly dominates the polynomial growth of the
  // coefficients, so coef_d / (1+d)^growth keeps decreasing past dmax. A zero
  // there would certify exhausted series as exact, which they are not.
  k.tail_env[dmax + 1] = k.coef[dmax] / std::pow(1.0 + dmax, k.growth);
  for (int d = dmax; d >= 0; --d) {
    double env = k.coef[d] / std::pow(1.0 + d, k.growth);
    k.tail_env[d] = std::max(env, k.tail_env[d + 1]);
  }
}

DiagonalKernelSeries kernel_from_moments(const RadialWeightSpec& spec, int d_max) {
  MomentSequence mu = moment_sequence(spec, d_max);
  DiagonalKernelSeries k;
  k.n = spec.domain.n;
  k.scale = spec.domain.radius_sq();
  k.measure = spec.domain.measure;
  k.growth = std::ceil(k.n + spec.alpha + 2.0);
  const double vol = spec.domain.measure == Measure::normalized
                         ? spec.domain.volume()
                         : 1.0;
  const double pn = pow_pi(k.n);
  k.coef.resize(d_max + 1);
  for (int d = 0; d <= d_max; ++d) {
    double rising = 1.0;  // (n-1+d)!/d!
    for (int i = 1; i < k.n; ++i) rising *= static_cast<double>(d + i);
    k.coef[d] = vol * rising / (pn * mu.scaled_value(d));
  }
  finalize_series(k);
  return k;
}

DiagonalKernelSeries kernel_from_coefficients(const std::vector<double>& sq_norms,
                                              Measure measure, double growth,
                                              double scale) {
  DiagonalKernelSeries k;
  k.n = 1;
  k.scale = scale;
  k.measure = measure;
  k.coef.resize(sq_norms.size());
  for (size_t i = 0; i < sq_norms.size(); ++i) {
    if (!(sq_norms[i] > 0.0))
      throw ParameterError("kernel_from_coefficients: norms must be positive");
    k.coef[i] = 1.0 / sq_norms[i];
  }
  k.growth = growth >= 0.0 ? growth : estimate_growth(k.coef);
  finalize_series(k);
  return k;
}

DiagonalKernelSeries szego_kernel(int d_max) {
  DiagonalKernelSeries k;
  k.n = 1;
  k.scale = 1.0;
  k.growth = 0.0;
  k.coef.assign(d_max + 1, 1.0 / (2.0 * kPi));
  finalize_series(k);
  return k;
}

namespace {

// Upper bound for sum_{d>D} coef_d q^d given coef_d <= env (1+d)^gamma with
// env = tail_env[D+1]: pull out (2+D)^gamma and bound the rest by a geometric
// series with ratio q e^{gamma/(2+D)} (valid since (1+d)/(2+D) <= e^{(d-D-1)/(2+D)}).
double tail_bound_at(const DiagonalKernelSeries& k, int D, double q) {
  double g = std::exp(k.growth / (2.0 + D));
  if (q * g >= 1.0) return std::numeric_limits<double>::infinity();
  return k.tail_env[D + 1] * std::pow(2.0 + D, k.growth) * std::pow(q, D + 1) /
         (1.0 - q * g);
}

}  // namespace

EvalResult evaluate(const DiagonalKernelSeries& k, std::span<const Complex> x,
                    std::span<const Complex> y, double tol) {
  if (static_cast<int>(x.size()) != k.n || static_cast<int>(y.size()) != k.n)
    throw ParameterError("evaluate: point dimension mismatch");
  if (!(tol > 0.0)) throw ParameterError("evaluate: tol must be positive");
  const Complex u = hermitian_inner(x, y) / k.scale;
  const double q = std::abs(u);
  if (q >= 1.0)
    throw DomainError("evaluate: |<x,y>| must be below R^2");

  const int dmax = k.max_degree();
  KahanSumComplex acc;
  Complex up = 1.0;
  for (int d = 0; d <= dmax; ++d) {
    acc.add(k.coef[d] * up);
    up *= u;
    if (d >= 8 && (d % 16 == 0 || d == dmax)) {
      double b = tail_bound_at(k, d, q);
      if (b <= tol) return {acc.value(), b, d + 1};
    }
  }
  double b = tail_bound_at(k, dmax, q);
  if (b <= tol) return {acc.value(), b, dmax + 1};
  throw AccuracyError("evaluate: series too short to certify requested tolerance",
                      acc.value(), b);
}

EvalResult evaluate1(const DiagonalKernelSeries& k, Complex x, Complex y, double tol) {
  return evaluate(k, std::span<const Complex>(&x, 1), std::span<const Complex>(&y, 1),
                  tol);
}

LiftCheckResult forelli_rudin_check(int m,
                                    std::span<const std::pair<Complex, Complex>> pairs,
                                    int d_max) {
  if (m < 0) throw ParameterError("forelli_rudin_check: m must be >= 0");
  RadialWeightSpec spec;
  spec.domain = DomainSpec::disc(1.0, Measure::lebesgue);
  spec.alpha = static_cast<double>(m);
  DiagonalKernelSeries k = kernel_from_moments(spec, d_max);

  LiftCheckResult out;
  for (const auto& [x, y] : pairs) {
    Complex t = x * std::conj(y);
    if (std::abs(t) >= 1.0)
      throw DomainError("forelli_rudin_check: pair outside the disc");
    // pi^m/m! times the C^{1+m} unweighted kernel on the slice (x,0),(y,0).
    Complex closed =
        (m + 1.0) / kPi * std::pow(1.0 - t, -(2.0 + static_cast<double>(m)));
    Complex series = evaluate1(k, x, y, 1e-13 * std::abs(closed)).value;
    double dev = std::abs(series - closed) / std::abs(closed);
    if (dev >= out.max_rel_dev) {
      out.max_rel_dev = dev;
      out.worst_series = series;
      out.worst_closed = closed;
    }
  }
  return out;
}

}  // namespace bergman
