#include "bergman/domain.hpp"

#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

namespace {
constexpr double kPi = 3.14159265358979323846;

double pow_pi(int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= kPi;
  return v;
}

double factorial(int n) {
  double v = 1.0;
  for (int i = 2; i <= n; ++i) v *= i;
  return v;
}
}  // namespace

DomainSpec DomainSpec::disc(double R, Measure m) {
  if (!(R > 0.0)) throw ParameterError("DomainSpec::disc: R must be positive");
  DomainSpec d;
  d.kind = Kind::disc;
  d.R = R;
  d.n = 1;
  d.measure = m;
  return d;
}

DomainSpec DomainSpec::ball(int n, Measure m) {
  if (n < 1) throw ParameterError("DomainSpec::ball: dimension must be >= 1");
  DomainSpec d;
  d.kind = Kind::ball;
  d.R = 1.0;
  d.n = n;
  d.measure = m;
  return d;
}

double DomainSpec::volume() const {
  if (kind == Kind::disc) return kPi * R * R;
  return pow_pi(n) / factorial(n);
}

Complex hermitian_inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size())
    throw ParameterError("hermitian_inner: dimension mismatch");
  Complex s = 0.0;
  for (size_t j = 0; j < x.size(); ++j) s += x[j] * std::conj(y[j]);
  return s;
}

double r_value(const DomainSpec& d, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != d.n)
    throw ParameterError("r_value: point dimension mismatch");
  double t = 0.0;
  for (auto& c : z) t += std::norm(c);
  return t - d.radius_sq();
}

double rho_value(const DomainSpec& d, std::span<const Complex> z) {
  return -r_value(d, z);
}

Complex rho_ext(const DomainSpec& d, std::span<const Complex> x,
                std::span<const Complex> y) {
  if (static_cast<int>(x.size()) != d.n || static_cast<int>(y.size()) != d.n)
    throw ParameterError("rho_ext: point dimension mismatch");
  return d.radius_sq() - hermitian_inner(x, y);
}

double J_boundary(const DomainSpec& d) { return d.radius_sq(); }

double grad_norm_boundary(const DomainSpec& d) { return d.radius(); }

namespace {

// Gamma(n - 2s + 1) degenerates at n - 2s + 1 = -k; the constant then carries
// (-1)^(k+1) / k! in place of the Gamma factor and the expansion gains a log.
struct GammaFactor {
  double value = 0.0;
  bool log_case = false;
  int log_index = 0;
};

GammaFactor gamma_or_log(double arg) {
  GammaFactor g;
  double k = -arg;
  double nearest = std::round(k);
  if (k >= -1e-12 && std::fabs(k - nearest) < 1e-12) {
    int ki = static_cast<int>(nearest);
    g.log_case = true;
    g.log_index = ki;
    g.value = ((ki % 2 == 0) ? -1.0 : 1.0) / factorial(ki);
    return g;
  }
  g.value = std::tgamma(arg);
  return g;
}

}  // namespace

LeadingConstant leading_constant(const DomainSpec& d, const LeadingLaw& law) {
  LeadingConstant out;
  const int n = d.n;
  const double pn = pow_pi(n);
  const double J = J_boundary(d);
  const double gr = grad_norm_boundary(d);
  const double vol_factor = d.measure == Measure::normalized ? d.volume() : 1.0;

  if (const auto* pw = std::get_if<PowerWeightLaw>(&law)) {
    if (!(pw->alpha > -1.0))
      throw ParameterError("leading_constant: power weight needs alpha > -1");
    out.exponent = n + pw->alpha + 1.0;
    out.constant = std::tgamma(n + pw->alpha + 1.0) /
                   (std::tgamma(pw->alpha + 1.0) * pn) * J /
                   std::exp(pw->g_boundary) * vol_factor;
    return out;
  }
  if (const auto* dn = std::get_if<DerivativeNormLaw>(&law)) {
    if (!(dn->m > 2.0 * dn->s - 1.0))
      throw ParameterError("leading_constant: derivative norm needs m > 2s - 1");
    GammaFactor g = gamma_or_log(n - 2.0 * dn->s + 1.0);
    out.exponent = n + 1.0 - 2.0 * dn->s;
    out.log_case = g.log_case;
    out.log_index = g.log_index;
    out.constant = g.value / std::tgamma(2.0 * dn->m - 2.0 * dn->s + 1.0) * J /
                   (pn * std::pow(gr, 2.0 * dn->m)) * vol_factor;
    return out;
  }
  if (const auto* nn = std::get_if<NormalNormLaw>(&law)) {
    if (!(nn->m > 2.0 * nn->s - 1.0))
      throw ParameterError("leading_constant: normal norm needs m > 2s - 1");
    GammaFactor g = gamma_or_log(n - 2.0 * nn->s + 1.0);
    out.exponent = n + 1.0 - 2.0 * nn->s;
    out.log_case = g.log_case;
    out.log_index = g.log_index;
    out.constant = g.value / std::tgamma(2.0 * nn->m - 2.0 * nn->s + 1.0) * J /
                   (pn * std::pow(gr, 4.0 * nn->m)) * vol_factor;
    return out;
  }
  const auto& sp = std::get<SpectralOrderLaw>(law);
  GammaFactor g = gamma_or_log(n - 2.0 * sp.s + 1.0);
  out.exponent = n + 1.0 - 2.0 * sp.s;
  out.log_case = g.log_case;
  out.log_index = g.log_index;
  // The explicit boundary model carries an extra 2^{-2s} against the displayed
  // form; see spectral_order_displayed_constant.
  out.constant = g.value * std::pow(2.0, -2.0 * sp.s) * J /
                 (pn * std::pow(gr, 2.0 * sp.s)) * vol_factor;
  return out;
}

double spectral_order_displayed_constant(const DomainSpec& d, double s) {
  GammaFactor g = gamma_or_log(d.n - 2.0 * s + 1.0);
  double vol_factor = d.measure == Measure::normalized ? d.volume() : 1.0;
  return g.value * J_boundary(d) /
         (pow_pi(d.n) * std::pow(grad_norm_boundary(d), 2.0 * s)) * vol_factor;
}

}  // namespace bergman
