#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/kernels.hpp"

namespace bergman {

// Kernel diagonal sampled along a ray to the boundary on a geometric grid
// rho_i = rho0 * 2^{-i}. err holds the certified evaluation bound per point;
// dropped counts grid points the evaluator could not certify (too close to
// the boundary for the stored series length).
struct RaySamples {
  std::vector<double> rho;
  std::vector<double> value;
  std::vector<double> err;
  int dropped = 0;
};

// diag(rho) evaluates the kernel at the ray point with boundary distance rho.
// Successive levels shrink rho by the factor step (0 < step < 1); a smaller
// ladder ratio packs more certified samples into the same boundary range,
// which richer fitting bases need.
RaySamples sample_along_ray(const std::function<EvalResult(double)>& diag,
                            double rho0, int levels, int min_points = 5,
                            double step = 0.5);

// Diagonal evaluator for a series kernel along direction dir (|dir| = 1 per
// coordinate vector; dir.size() == k.n). Each point is evaluated to relative
// tolerance rel_tol, using a rough partial sum as the magnitude estimate.
std::function<EvalResult(double)> make_diag_evaluator(const DiagonalKernelSeries& k,
                                                      Point dir, double rel_tol);

// Model a * rho^-p + lower-order terms:
// columns rho^{-p+i} (i = 0..power_terms-1), then rho^{-q} log rho for each
// q in log_powers (q = 0 gives a plain log), then the constant 1.
struct SingularityBasis {
  double p = 1.0;
  int power_terms = 3;
  std::vector<double> log_powers;
  bool constant_term = true;

  int columns() const {
    return power_terms + static_cast<int>(log_powers.size()) + (constant_term ? 1 : 0);
  }
};

struct SingularityFit {
  SingularityBasis basis;
  Eigen::VectorXd coeffs;            // in column order of the basis
  std::vector<double> uncertainty;   // per-coefficient, from the LS covariance
  double residual_max = 0.0;
  double residual_rms = 0.0;
  double cond = 0.0;
  double leading() const { return coeffs(0); }
};

// Basis with the constant column dropped automatically whenever some power
// column already lands on rho^0, which would duplicate it.
SingularityBasis standard_basis(double p, int power_terms = 3,
                                std::vector<double> log_powers = {});

// Column-scaled least squares via SVD. Requires at least columns()+2 samples;
// throws FitError on a rank-deficient design, naming the collinear columns.
SingularityFit fit_singularity(const RaySamples& s, const SingularityBasis& basis);

// Decide whether a log term belongs in the expansion by comparing fits with
// and without the column rho^{-log_q} log rho.
struct LogDetection {
  enum class Presence { absent, present, indeterminate };
  Presence presence = Presence::absent;
  double b = 0.0;            // fitted log coefficient
  double uncertainty = 0.0;
  double improvement = 0.0;  // max-residual ratio without/with the log column
  SingularityFit with_log;
};
LogDetection detect_log(const RaySamples& s, double p, double log_q);

// 1-d search over the leading exponent minimizing the fit residual.
struct FreeExponentFit {
  double p = 0.0;
  SingularityFit fit;
};
FreeExponentFit free_exponent_fit(const RaySamples& s, const SingularityBasis& shape,
                                  double p_lo, double p_hi);

// Two-power model a_p rho^-p + a_q rho^-q + c with both exponents searched.
// When the second component is degenerate (coefficient negligible or q -> p)
// the exponents are merged and reported equal.
struct TwoPowerFit {
  double p = 0.0, q = 0.0;
  double a_p = 0.0, a_q = 0.0;
  double residual = 0.0;  // relative rms over the samples
  bool merged = false;
};
TwoPowerFit fit_two_powers(const RaySamples& s, double p_lo, double p_hi,
                           double q_lo = 0.1);

// Finite part of the Laplace-type integral int_0^inf e^{-tp} t^s dt:
// Gamma(s+1)/p^{s+1} away from s in {-1,-2,...}; at s = -k-1 the continuation
// value ((-1)^{k+1}/k!) p^k (log p + C_k) with C_k = euler_gamma - H_k.
std::complex<double> partie_finie(std::complex<double> s, std::complex<double> p);

// Independent quadrature route: Taylor subtraction under the integral plus
// explicit compensation terms. Real s; pole values handled by dropping the
// divergent compensation term (the finite-part limit). Cross-check only;
// never used to implement partie_finie.
double regularized_laplace_oracle(double s, double p, double tol = 1e-11);

}  // namespace bergman
