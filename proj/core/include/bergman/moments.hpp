#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "bergman/domain.hpp"

namespace bergman {

// Radial density h(t) multiplying (R^2 - t)^alpha, as a function of t = |z|^2.
// Closed-form tags keep the moment computation exact; a generic callable
// forces the quadrature path.
struct OneFactor {};
struct PolynomialFactor {
  std::vector<double> coeffs;  // h(t) = sum_j coeffs[j] t^j
};
struct ExpLinearFactor {
  double c = 1.0;  // h(t) = exp(c t)
};
struct CustomFactor {
  std::function<double(double)> h;
};
using RadialFactor = std::variant<OneFactor, PolynomialFactor, ExpLinearFactor, CustomFactor>;

// Weight w(z) = (R^2 - |z|^2)^alpha h(|z|^2) on the domain, alpha > -1.
struct RadialWeightSpec {
  DomainSpec domain;
  double alpha = 0.0;
  RadialFactor factor = OneFactor{};
};

// Radial moments mu_d = integral_0^{R^2} t^{d+n-1} (R^2-t)^alpha h(t) dt.
// Stored rescaled by R^{-2d} so radii other than 1 stay inside double range.
struct MomentSequence {
  double scale = 1.0;          // R^2
  std::vector<double> scaled;  // mu_d * scale^{-d}
  double err = 0.0;            // quadrature self-agreement, 0 for closed forms

  int max_degree() const { return static_cast<int>(scaled.size()) - 1; }
  double scaled_value(int d) const { return scaled.at(d); }
  double value(int d) const { return scaled.at(d) * std::pow(scale, d); }
};

// Closed form for h == 1: mu_d = R^{2(d+n+alpha)} B(d+n, alpha+1).
double beta_moment(int d, double alpha, int n, double R);

// Full sequence d = 0..d_max; closed forms for the tagged factors, adaptive
// Gauss-Jacobi with node doubling otherwise.
MomentSequence moment_sequence(const RadialWeightSpec& spec, int d_max);

// Single moment by Gauss-Jacobi quadrature regardless of the factor tag.
// Kept as an independent route for cross-checks.
double quadrature_moment(const RadialWeightSpec& spec, int d);

// One term coeff z^a conj(z)^b of a trigonometric-polynomial angular factor.
struct AngularTerm {
  int a = 0;
  int b = 0;
  Complex coeff = 0.0;
};

// Weight w(z) = radial(z) * p(z, conj z) on a disc; p must be Hermitian
// symmetric (p_{ab} = conj(p_{ba})) and positive on the closed disc.
struct AngularWeightSpec {
  RadialWeightSpec radial;
  std::vector<AngularTerm> terms;
};

// Monomial Gram matrix M_jk = <z^j, z^k>_w for 0 <= j, k < N. Banded:
// M_jk != 0 only when |j - k| <= max |a - b| over the angular terms.
struct GramMatrix {
  Eigen::MatrixXcd M;
  int bandwidth = 0;
};

GramMatrix monomial_gram(const AngularWeightSpec& spec, int N);

}  // namespace bergman
