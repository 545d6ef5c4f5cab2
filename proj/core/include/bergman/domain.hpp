#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;  // a point of C^n

enum class Measure { lebesgue, normalized };

// Model domain: a disc of radius R in C, or the unit ball of C^n.
struct DomainSpec {
  enum class Kind { disc, ball } kind = Kind::disc;
  double R = 1.0;  // disc radius; balls are fixed at radius 1
  int n = 1;       // complex dimension (1 for the disc)
  Measure measure = Measure::lebesgue;

  static DomainSpec disc(double R, Measure m = Measure::lebesgue);
  static DomainSpec ball(int n, Measure m = Measure::lebesgue);

  double radius() const { return kind == Kind::disc ? R : 1.0; }
  double radius_sq() const { return radius() * radius(); }
  double volume() const;
};

// Hermitian pairing sum_j x_j conj(y_j).
Complex hermitian_inner(std::span<const Complex> x, std::span<const Complex> y);

// Defining function r(z) = |z|^2 - R^2 (negative inside) and its companions.
double r_value(const DomainSpec& d, std::span<const Complex> z);
double rho_value(const DomainSpec& d, std::span<const Complex> z);  // R^2 - |z|^2
// Polarized distance to the boundary, rho_ext(x, y) = R^2 - <x, y>.
Complex rho_ext(const DomainSpec& d, std::span<const Complex> x,
                std::span<const Complex> y);

// Monge-Ampere-type boundary invariant of rho = R^2 - |z|^2 (constant here).
double J_boundary(const DomainSpec& d);
// |grad r| on the boundary in the Hermitian metric, |dbar r| = |z| = R.
double grad_norm_boundary(const DomainSpec& d);

// Which boundary-expansion law a leading constant is requested for.
// power_weight: weights (R^2-|z|^2)^alpha e^g, g smooth, value g at the boundary.
// derivative_norm: graded Sobolev form over all derivatives of order <= m.
// normal_norm: Sobolev form over powers of the complex normal derivative.
// spectral_order: boundary-operator power scale (order-(-1) model).
struct PowerWeightLaw {
  double alpha = 0.0;
  double g_boundary = 0.0;
};
struct DerivativeNormLaw {
  int m = 0;
  double s = 0.0;
};
struct NormalNormLaw {
  int m = 0;
  double s = 0.0;
};
struct SpectralOrderLaw {
  double s = 0.0;
};
using LeadingLaw =
    std::variant<PowerWeightLaw, DerivativeNormLaw, NormalNormLaw, SpectralOrderLaw>;

// Leading behaviour of the kernel diagonal: K(z,z) ~ constant * rho^(-exponent),
// with rho^(-exponent) log(1/rho) instead when log_case is set (the Gamma factor
// degenerates at a nonpositive integer, index k = log_index).
struct LeadingConstant {
  double exponent = 0.0;
  double constant = 0.0;
  bool log_case = false;
  int log_index = 0;
};

LeadingConstant leading_constant(const DomainSpec& d, const LeadingLaw& law);

// The spectral_order law as displayed in its source corollary, without the
// 2^{-2s} factor that the explicit model produces. Kept separate so the
// discrepancy can be reported alongside the measured value.
double spectral_order_displayed_constant(const DomainSpec& d, double s);

}  // namespace bergman
