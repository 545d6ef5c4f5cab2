#pragma once

#include <functional>

#include "bergman/domain.hpp"
#include "bergman/kernels.hpp"

namespace bergman {

// Diagonal spectral model on the Hardy space of the unit circle (arclength
// measure): a positive operator with eigenvalue lambda(k) on span{e^{ik
// theta}}. tail_degree bounds the growth used by certified truncation:
// lambda(k)^{2 Re s - 1} must stay within a constant of (1+k)^{tail_degree
// * (1 - 2 Re s)}, with the normalized envelope nonincreasing in k.
struct SpectralModel {
  std::function<double(int)> lambda;
  double tail_degree = 1.0;
};

// The square of the harmonic-extension operator norm: lambda(k) = 1/(2(k+1)).
SpectralModel lambda0_model();

// K^{(s)}(x, y) = sum_k lambda(k)^{2s-1} (x conj y)^k / (2 pi), certified to
// tol through the modulus |lambda^{2s-1}| = lambda^{2 Re s - 1}. Throws
// DomainError off the open disc and AccuracyError when k_cap cannot certify.
EvalResult spectral_kernel(const SpectralModel& model, Complex s, Complex x,
                           Complex y, double tol, int k_cap = 200000);

// Same sum for the lambda0 model through the explicit form
// (2(k+1))^{1-2s} (x conj y)^k / (2 pi); an independent arithmetic route
// kept for cross-checking against spectral_kernel(lambda0_model(), ...).
EvalResult lambda0_direct_kernel(Complex s, Complex x, Complex y, double tol,
                                 int k_cap = 200000);

// Trapezoid contour integral of s -> K^{(s)}(x,y) over the axis-aligned
// closed rectangle with corners lo and hi, traversed counterclockwise.
// Holomorphy in s makes the exact value 0.
Complex contour_integral(const SpectralModel& model, Complex lo, Complex hi,
                         Complex x, Complex y, int nodes_per_side,
                         double tol_each = 1e-13);

// Pointwise complex power of the model: k -> lambda(k)^s, principal branch.
std::function<Complex(int)> power_sequence(const SpectralModel& model, Complex s);

// Diagonal evaluator K^{(s)}(x_rho, x_rho) for real s along the positive
// axis, for boundary-asymptotics sampling.
std::function<EvalResult(double)> make_spectral_diag(const SpectralModel& model,
                                                     double s, double rel_tol,
                                                     int k_cap = 200000);

}  // namespace bergman
