#include "bergman/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {

std::vector<int> log_spaced(int a, int b, int count) {
  std::vector<int> ks;
  double la = std::log(static_cast<double>(a));
  double lb = std::log(static_cast<double>(b));
  for (int i = 0; i < count; ++i) {
    int k = static_cast<int>(std::lround(std::exp(la + (lb - la) * i / (count - 1))));
    k = std::clamp(k, a, b);
    if (ks.empty() || k != ks.back()) ks.push_back(k);
  }
  return ks;
}

struct SlopeFit {
  double slope = 0.0;
  double mean_log_k = 0.0;
};

// Least squares of log|lambda| against log k over log-spaced samples.
SlopeFit window_slope(const std::function<double(int)>& f, int a, int b) {
  std::vector<int> ks = log_spaced(a, b, 48);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(ks.size());
  for (int k : ks) {
    double v = f(k);
    if (v == 0.0 || !std::isfinite(v))
      throw ValidityError("order estimate hit a zero or non-finite eigenvalue");
    double lx = std::log(static_cast<double>(k));
    double ly = std::log(std::fabs(v));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  SlopeFit out;
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.mean_log_k = sx / n;
  return out;
}

}  // namespace

OrderSymbol estimate_order_symbol(const DiagonalGTO& op, int k_lo, int k_hi,
                                  double mismatch_tol) {
  if (k_lo < 1 || k_hi <= 2 * k_lo)
    throw ParameterError("order estimate needs 1 <= k_lo and k_hi > 2 k_lo");

  // Dyadic subwindows (b/2, b], finest at k_hi, listed coarse to fine so the
  // extrapolation sees errors shrinking by about 2 per step.
  std::vector<std::pair<int, int>> windows;
  for (int b = k_hi; b / 2 >= k_lo && windows.size() < 12; b /= 2)
    windows.push_back({b / 2, b});
  std::reverse(windows.begin(), windows.end());
  if (windows.size() < 2)
    throw ParameterError("order estimate window is too narrow to split");

  const double sign = op.lambda(k_hi) < 0.0 ? -1.0 : 1.0;
  std::vector<double> slopes;
  for (auto [a, b] : windows) {
    // A zero on a window endpoint is a degeneracy, not a sign change; keep
    // the two failure kinds distinct.
    for (int e : {a, b}) {
      double v = op.lambda(e);
      if (v == 0.0 || !std::isfinite(v))
        throw ValidityError("order estimate hit a zero or non-finite eigenvalue");
      if (v * sign < 0.0)
        throw FitError("eigenvalues change sign across the estimation window");
    }
    slopes.push_back(window_slope(op.lambda, a, b).slope);
  }

  OrderSymbol est;
  est.slope_spread =
      *std::max_element(slopes.begin(), slopes.end()) -
      *std::min_element(slopes.begin(), slopes.end());
  if (est.slope_spread > mismatch_tol) {
    std::ostringstream msg;
    msg << "sequence is not power-like: subwindow slopes spread "
        << est.slope_spread << " exceeds " << mismatch_tol;
    throw FitError(msg.str());
  }
  est.order = richardson_limit(slopes, 2.0);

  // Window means of log(|lambda| k^{-order}), extrapolated the same way.
  std::vector<double> logc;
  for (auto [a, b] : windows) {
    std::vector<int> ks = log_spaced(a, b, 48);
    KahanSum acc;
    for (int k : ks)
      acc.add(std::log(std::fabs(op.lambda(k))) - est.order * std::log(double(k)));
    logc.push_back(acc.value() / ks.size());
  }
  est.symbol = sign * std::exp(richardson_limit(logc, 2.0));
  return est;
}

double power_law_slope(const std::function<double(int)>& f, int k_lo, int k_hi) {
  if (k_lo < 1 || k_hi <= k_lo)
    throw ParameterError("slope fit needs 1 <= k_lo < k_hi");
  return window_slope(f, k_lo, k_hi).slope;
}

DiagonalGTO compose(const DiagonalGTO& a, const DiagonalGTO& b) {
  return {[la = a.lambda, lb = b.lambda](int k) { return la(k) * lb(k); }};
}

DiagonalGTO parametrix(const DiagonalGTO& op) {
  return {[l = op.lambda](int k) {
    double v = l(k);
    if (v == 0.0)
      throw ValidityError("parametrix of a non-elliptic model: zero eigenvalue");
    return 1.0 / v;
  }};
}

DiagonalGTO parametrix_of_leading(double order, double symbol) {
  if (symbol == 0.0) throw ParameterError("leading symbol must be nonzero");
  return {[order, symbol](int k) {
    if (k < 1) throw DomainError("leading-part parametrix is defined for k >= 1");
    return 1.0 / (symbol * std::pow(static_cast<double>(k), order));
  }};
}

ComplexDiagonalGTO complex_power(const DiagonalGTO& op, Complex s) {
  return {[l = op.lambda, s](int k) {
    double v = l(k);
    if (!(v > 0.0))
      throw DomainError("complex power needs positive eigenvalues");
    return std::exp(s * std::log(v));
  }};
}

DiagonalGTO modulus(const ComplexDiagonalGTO& op) {
  return {[l = op.lambda](int k) { return std::abs(l(k)); }};
}

}  // namespace bergman
