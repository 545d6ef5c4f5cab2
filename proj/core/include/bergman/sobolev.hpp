#pragma once

#include <vector>

#include "bergman/domain.hpp"
#include "bergman/kernels.hpp"

namespace bergman {

// Families of graded norms on holomorphic (or harmonic) functions on a disc,
// all diagonal on monomials: ||z^k||^2 = Q_k. With beta = 2m - 2s and
// W(k) = pi R^{2k + 2 beta + 2} B(k+1, beta+1) the squared weighted L^2 norm
// of z^k against (R^2 - |z|^2)^beta, the variants are
//   derivative_sum        sum_{j<=m} (k!/(k-j)!)^2 W(k-j)      (all derivatives)
//   normal_sum            sum_{j<=m} k^{2j} W(k)               (powers of z d/dz)
//   gradient_sum          same sum as derivative_sum, under the weaker
//                         hypothesis m > s - 1/2 (full-gradient convention)
//   top_plus_mass         top derivative term + W(k)
//   top_plus_jet          top derivative term; (k!)^2 jet at 0 for k < m
//   radial_sum            sum_{j<=m} k^{2j} W(k)  (real radial derivative)
//   radial_top_plus_mass  (1 + k^{2m}) W(k)
struct NormVariant {
  enum class Tag {
    derivative_sum,
    normal_sum,
    gradient_sum,
    top_plus_mass,
    top_plus_jet,
    radial_sum,
    radial_top_plus_mass,
  };
  enum class Space { holomorphic, harmonic };

  Tag tag = Tag::derivative_sum;
  int m = 0;
  double s = 0.0;
  Space space = Space::holomorphic;
  DomainSpec domain = DomainSpec::disc(1.0);
};

// Q_k stored rescaled by R^{-2k}; the rescaling cancels in ratios and is
// re-applied by the kernel constructor through its scale field.
struct CoefficientForm {
  NormVariant variant;
  double scale = 1.0;          // R^2
  std::vector<double> scaled;  // Q_k * R^{-2k}

  int max_degree() const { return static_cast<int>(scaled.size()) - 1; }
  double scaled_value(int k) const { return scaled.at(k); }
};

// Validates the variant hypothesis (m > 2s - 1, or m > s - 1/2 for the
// gradient/top_plus_mass/top_plus_jet family) and fills Q_k for k <= k_max.
CoefficientForm coefficient_form(const NormVariant& v, int k_max);

// Reproducing kernel of the holomorphic space with norms Q_k: b_k = 1/Q_k.
DiagonalKernelSeries sobolev_kernel(const CoefficientForm& form);

// Harmonic-space kernel: K(x,y) = sum_{k>=0} (x conj y)^k / Q_k
//                               + sum_{k>=1} (conj x y)^k / Q_k.
struct HarmonicKernel {
  DiagonalKernelSeries half;  // the holomorphic half
};
HarmonicKernel harmonic_sobolev_kernel(const CoefficientForm& form);
EvalResult evaluate_harmonic(const HarmonicKernel& k, Complex x, Complex y,
                             double tol);

// Empirical range of Q^A_k / Q^B_k over k in [k_lo, k_hi]; the norms are
// equivalent on the truncated scale iff both ends are finite and positive.
struct RatioRange {
  double inf = 0.0;
  double sup = 0.0;
};
RatioRange equivalence_ratio(const CoefficientForm& a, const CoefficientForm& b,
                             int k_lo, int k_hi);

}  // namespace bergman
