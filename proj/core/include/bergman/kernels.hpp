#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/moments.hpp"

namespace bergman {

// Diagonal-type reproducing kernel K(x, y) = sum_d b_d <x, y>^d on a disc or
// ball. Coefficients are stored rescaled, coef[d] = b_d * R^{2d}, and sums run
// in u = <x,y>/R^2; see coefficient(). tail_env holds suffix maxima of
// coef[d] / (1+d)^growth, which certify the truncation bound in evaluate().
struct DiagonalKernelSeries {
  int n = 1;
  double scale = 1.0;  // R^2
  Measure measure = Measure::lebesgue;
  double growth = 0.0;
  std::vector<double> coef;
  std::vector<double> tail_env;

  int max_degree() const { return static_cast<int>(coef.size()) - 1; }
  double coefficient(int d) const { return coef.at(d) * std::pow(scale, -d); }
  double scaled_coefficient(int d) const { return coef.at(d); }
};

struct EvalResult {
  Complex value{};
  double tail_bound = 0.0;
  int terms = 0;
};

// Finalize a series whose coef/growth are filled in: validates positivity and
// builds the tail envelope. All constructors below call it.
void finalize_series(DiagonalKernelSeries& k);

// Kernel of the weighted space attached to a radial weight, through its
// moments: b_d = (n-1+d)!/(pi^n d! mu_d), times the volume for a normalized
// measure. growth defaults to ceil(n + alpha + 2).
DiagonalKernelSeries kernel_from_moments(const RadialWeightSpec& spec, int d_max);

// Kernel from prescribed squared norms c_k of z^k (b_k = 1/c_k); growth
// degree estimated from the data unless given >= 0. For a disc of radius R
// pass scale = R^2 and the norms rescaled as c_k * R^{-2k}, which keeps
// radius-dependent growth out of double range.
DiagonalKernelSeries kernel_from_coefficients(const std::vector<double>& sq_norms,
                                              Measure measure = Measure::normalized,
                                              double growth = -1.0,
                                              double scale = 1.0);

// Boundary kernel of the Hardy space on the unit circle, b_k = 1/(2 pi).
DiagonalKernelSeries szego_kernel(int d_max);

// Partial sum to the adaptively chosen degree D with a certified bound:
// |K(x,y) - sum_{d<=D}| <= tail_bound <= tol. Throws DomainError when
// |<x,y>| >= R^2 and AccuracyError when d_max cannot certify tol.
EvalResult evaluate(const DiagonalKernelSeries& k, std::span<const Complex> x,
                    std::span<const Complex> y, double tol);

// Convenience for one-dimensional points.
EvalResult evaluate1(const DiagonalKernelSeries& k, Complex x, Complex y, double tol);

// Lifting check: the disc kernel for weight (1-|z|^2)^m against the slice of
// the unweighted ball kernel of C^{1+m}, scaled by pi^m/m!. Returns the
// largest relative deviation over the supplied pairs.
struct LiftCheckResult {
  double max_rel_dev = 0.0;
  Complex worst_series{}, worst_closed{};
};
LiftCheckResult forelli_rudin_check(int m, std::span<const std::pair<Complex, Complex>> pairs,
                                    int d_max = 4000);

}  // namespace bergman
