#pragma once

#include <complex>
#include <functional>

#include "bergman/domain.hpp"

namespace bergman {

// Operator diagonal on a fixed basis, described by its eigenvalue sequence.
// Order and symbol live in the power-law picture lambda_k ~ c0 * k^m.
struct DiagonalGTO {
  std::function<double(int)> lambda;
};

struct ComplexDiagonalGTO {
  std::function<Complex(int)> lambda;
};

// Power-law parameters fitted over [k_lo, k_hi]: the order is the log-log
// slope refined by Richardson extrapolation over dyadic subwindows, the
// symbol the extrapolated limit of lambda_k k^{-order}. slope_spread is the
// raw disagreement between subwindow slopes before extrapolation; when it
// exceeds mismatch_tol the sequence is not power-like and a FitError is
// thrown.
struct OrderSymbol {
  double order = 0.0;
  double symbol = 0.0;
  double slope_spread = 0.0;
};

OrderSymbol estimate_order_symbol(const DiagonalGTO& op, int k_lo, int k_hi,
                                  double mismatch_tol = 0.25);

// Plain least-squares slope of log|f(k)| against log k, no extrapolation.
// Used for residual decay rates.
double power_law_slope(const std::function<double(int)>& f, int k_lo, int k_hi);

// Pointwise product of eigenvalues; order and symbol are additive and
// multiplicative respectively in the power-law picture.
DiagonalGTO compose(const DiagonalGTO& a, const DiagonalGTO& b);

// Reciprocal eigenvalues; throws ValidityError on a zero eigenvalue when
// evaluated (non-elliptic model).
DiagonalGTO parametrix(const DiagonalGTO& op);

// Inverse of the declared leading part c0 k^m alone. Against the true
// eigenvalues this leaves a residual lambda_k/(c0 k^m) - 1 decaying one
// order faster, checked through power_law_slope.
DiagonalGTO parametrix_of_leading(double order, double symbol);

// lambda_k^s on the principal branch; requires positive eigenvalues.
ComplexDiagonalGTO complex_power(const DiagonalGTO& op, Complex s);

// |lambda_k| of a complex diagonal operator, for order/symbol estimation.
DiagonalGTO modulus(const ComplexDiagonalGTO& op);

}  // namespace bergman
