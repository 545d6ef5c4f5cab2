#include "bergman/moments.hpp"

#include <cmath>
#include <limits>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/special.hpp"

namespace bergman {

namespace {
constexpr double kPi = 3.14159265358979323846;

void validate(const RadialWeightSpec& spec) {
  if (!(spec.alpha > -1.0))
    throw ParameterError("RadialWeightSpec: alpha must be > -1");
  if (const auto* pf = std::get_if<PolynomialFactor>(&spec.factor)) {
    if (pf->coeffs.empty())
      throw ParameterError("RadialWeightSpec: empty polynomial factor");
  }
}

double eval_factor(const RadialFactor& f, double t) {
  if (std::holds_alternative<OneFactor>(f)) return 1.0;
  if (const auto* pf = std::get_if<PolynomialFactor>(&f)) {
    double v = 0.0;
    for (size_t j = pf->coeffs.size(); j-- > 0;) v = v * t + pf->coeffs[j];
    return v;
  }
  if (const auto* ef = std::get_if<ExpLinearFactor>(&f)) return std::exp(ef->c * t);
  return std::get<CustomFactor>(f).h(t);
}

void check_positivity(const RadialWeightSpec& spec) {
  // Sampled check; the closed-form paths only need h > 0 on [0, R^2].
  const double R2 = spec.domain.radius_sq();
  for (int i = 0; i <= 256; ++i) {
    double t = R2 * i / 256.0;
    if (!(eval_factor(spec.factor, t) > 0.0))
      throw ValidityError("RadialWeightSpec: radial factor not positive on [0, R^2]");
  }
}

bool is_nonnegative_integer(double x, int* out) {
  double r = std::round(x);
  if (r >= 0.0 && std::fabs(x - r) < 1e-12) {
    *out = static_cast<int>(r);
    return true;
  }
  return false;
}

// B(d+n+j, alpha+1) for integer alpha >= 0 as an exact rational product.
double beta_integer_alpha(long dnj, int alpha_int) {
  double num = 1.0;
  for (int i = 2; i <= alpha_int; ++i) num *= i;  // alpha!
  double den = 1.0;
  for (int i = 0; i <= alpha_int; ++i) den *= static_cast<double>(dnj + i);
  return num / den;
}

// Scaled closed-form sequence for h == 1 or polynomial h.
MomentSequence closed_form_sequence(const RadialWeightSpec& spec, int d_max,
                                    const std::vector<double>& coeffs) {
  const int n = spec.domain.n;
  const double R2 = spec.domain.radius_sq();
  const double alpha = spec.alpha;
  MomentSequence out;
  out.scale = R2;
  out.scaled.assign(d_max + 1, 0.0);

  int alpha_int = -1;
  const bool exact = is_nonnegative_integer(alpha, &alpha_int);

  const size_t J = coeffs.size();
  // mu_d * R^{-2d} = sum_j coeffs[j] R^{2(n+alpha+j)} B(d+n+j, alpha+1).
  std::vector<double> pref(J), base(J);
  for (size_t j = 0; j < J; ++j) {
    pref[j] = coeffs[j] * std::pow(R2, n + alpha + static_cast<double>(j));
    base[j] = exact ? beta_integer_alpha(n + static_cast<long>(j), alpha_int)
                    : beta_fn(n + static_cast<double>(j), alpha + 1.0);
  }
  for (int d = 0; d <= d_max; ++d) {
    double s = 0.0;
    for (size_t j = 0; j < J; ++j) {
      double b = exact && d > 0
                     ? beta_integer_alpha(d + n + static_cast<long>(j), alpha_int)
                     : base[j];
      s += pref[j] * b;
      // advance B(d+n+j, alpha+1) -> B(d+1+n+j, alpha+1)
      double dnj = d + n + static_cast<double>(j);
      base[j] = b * dnj / (dnj + alpha + 1.0);
    }
    out.scaled[d] = s;
  }
  return out;
}

// One Gauss-Jacobi pass: scaled moments for all d at a fixed node count.
void quadrature_pass(const RadialWeightSpec& spec, int d_max, int Q,
                     std::vector<double>* out) {
  const int n = spec.domain.n;
  const double R2 = spec.domain.radius_sq();
  GaussJacobiRule rule(Q, spec.alpha, 0.0);
  out->assign(d_max + 1, 0.0);
  std::vector<KahanSum> acc(d_max + 1);
  for (int i = 0; i < Q; ++i) {
    double u = 0.5 * (1.0 + rule.x[i]);  // t / R^2 in (0, 1)
    double t = R2 * u;
    double f = rule.w[i] * std::pow(0.5 * R2, spec.alpha + 1.0) *
               std::pow(t, n - 1) * eval_factor(spec.factor, t);
    double p = 1.0;
    for (int d = 0; d <= d_max; ++d) {
      acc[d].add(f * p);
      p *= u;
    }
  }
  for (int d = 0; d <= d_max; ++d) (*out)[d] = acc[d].value();
}

MomentSequence quadrature_sequence(const RadialWeightSpec& spec, int d_max) {
  // The doubling test certifies degree d only while the half-size rule still
  // integrates t^{d+n-1} exactly, so the usable d_max is about kCap - 100.
  constexpr int kCap = 8192;
  MomentSequence out;
  out.scale = spec.domain.radius_sq();
  // A node displaced by machine epsilon near the right endpoint moves u^d by
  // about d*eps relatively, so two rules cannot agree better than that at the
  // top degree; the settle threshold has to grow with d_max.
  const double settle = 1e-12 + 5e-15 * d_max;
  // Node and weight errors also grow with the rule size, so once the nodes
  // resolve the top degree the pair differences stop shrinking and start
  // tracking rule noise instead. A difference that no longer halves while
  // sitting far below any truncation scale marks that floor; the smaller of
  // the two rules is then the better answer. Genuine non-convergence (a rough
  // factor) keeps decaying at an algebraic rate and fails both tests.
  const double noise_ceiling = 1e-8 + 2e-12 * d_max;
  double prev_worst = std::numeric_limits<double>::infinity();
  std::vector<double> prev, cur;
  int Q = 64;
  quadrature_pass(spec, d_max, Q, &prev);
  while (Q < kCap) {
    Q *= 2;
    quadrature_pass(spec, d_max, Q, &cur);
    double worst = 0.0;
    for (int d = 0; d <= d_max; ++d) {
      double denom = std::fabs(cur[d]);
      if (denom == 0.0) denom = std::numeric_limits<double>::min();
      worst = std::max(worst, std::fabs(cur[d] - prev[d]) / denom);
    }
    if (worst <= settle) {
      out.scaled = cur;
      out.err = worst;
      return out;
    }
    if (worst >= 0.5 * prev_worst && worst <= noise_ceiling) {
      out.scaled = prev;
      out.err = worst;
      return out;
    }
    prev_worst = worst;
    prev.swap(cur);
  }
  throw AccuracyError("moment_sequence: quadrature did not settle at the node cap",
                      std::numeric_limits<double>::quiet_NaN(), 0.0);
}

}  // namespace

double beta_moment(int d, double alpha, int n, double R) {
  if (d < 0 || n < 1) throw ParameterError("beta_moment: need d >= 0, n >= 1");
  if (!(alpha > -1.0)) throw ParameterError("beta_moment: alpha must be > -1");
  if (!(R > 0.0)) throw ParameterError("beta_moment: R must be positive");
  return std::pow(R, 2.0 * (d + n + alpha)) * beta_fn(d + n, alpha + 1.0);
}

MomentSequence moment_sequence(const RadialWeightSpec& spec, int d_max) {
  validate(spec);
  if (d_max < 0) throw ParameterError("moment_sequence: d_max must be >= 0");
  check_positivity(spec);
  if (std::holds_alternative<OneFactor>(spec.factor))
    return closed_form_sequence(spec, d_max, {1.0});
  if (const auto* pf = std::get_if<PolynomialFactor>(&spec.factor))
    return closed_form_sequence(spec, d_max, pf->coeffs);
  return quadrature_sequence(spec, d_max);
}

double quadrature_moment(const RadialWeightSpec& spec, int d) {
  validate(spec);
  if (d < 0) throw ParameterError("quadrature_moment: d must be >= 0");
  check_positivity(spec);
  constexpr int kCap = 4096;
  const double R2 = spec.domain.radius_sq();
  const int n = spec.domain.n;
  auto pass = [&](int Q) {
    GaussJacobiRule rule(Q, spec.alpha, 0.0);
    KahanSum s;
    for (int i = 0; i < Q; ++i) {
      double u = 0.5 * (1.0 + rule.x[i]);
      double t = R2 * u;
      s.add(rule.w[i] * std::pow(0.5 * R2, spec.alpha + 1.0) * std::pow(u, d) *
            std::pow(t, n - 1) * eval_factor(spec.factor, t));
    }
    return s.value();
  };
  const double settle = 1e-12 + 5e-15 * d;  // same node-sensitivity scaling
  int Q = 64;
  double prev = pass(Q);
  while (Q < kCap) {
    Q *= 2;
    double cur = pass(Q);
    double denom = std::max(std::fabs(cur), std::numeric_limits<double>::min());
    if (std::fabs(cur - prev) / denom <= settle)
      return cur * std::pow(R2, d);
    prev = cur;
  }
  throw AccuracyError("quadrature_moment: node cap reached", prev * std::pow(R2, d),
                      0.0);
}

GramMatrix monomial_gram(const AngularWeightSpec& spec, int N) {
  if (N < 1) throw ParameterError("monomial_gram: N must be >= 1");
  if (spec.radial.domain.kind != DomainSpec::Kind::disc)
    throw ParameterError("monomial_gram: angular weights are disc-only");
  if (spec.terms.empty()) throw ParameterError("monomial_gram: empty angular part");

  // Hermitian symmetry of the trig polynomial: p_{ab} = conj(p_{ba}).
  for (const auto& t : spec.terms) {
    if (t.a < 0 || t.b < 0) throw ParameterError("monomial_gram: negative powers");
    bool matched = false;
    for (const auto& u : spec.terms)
      if (u.a == t.b && u.b == t.a &&
          std::abs(u.coeff - std::conj(t.coeff)) <= 1e-14 * (1.0 + std::abs(t.coeff)))
        matched = true;
    if (!matched)
      throw ValidityError("monomial_gram: angular polynomial is not Hermitian");
  }

  // Positivity of the full weight, sampled over radius and angle.
  {
    const double R = spec.radial.domain.radius();
    for (int ir = 0; ir <= 48; ++ir) {
      double r = R * ir / 48.0;
      for (int ia = 0; ia < 96; ++ia) {
        double th = 2.0 * kPi * ia / 96.0;
        Complex z = std::polar(r, th);
        Complex p = 0.0;
        for (const auto& t : spec.terms)
          p += t.coeff * std::pow(z, t.a) * std::pow(std::conj(z), t.b);
        if (!(p.real() > 0.0) || std::fabs(p.imag()) > 1e-12 * (1.0 + std::fabs(p.real())))
          throw ValidityError("monomial_gram: angular factor not positive on the disc");
      }
    }
  }

  int max_shift = 0, max_power = 0;
  for (const auto& t : spec.terms) {
    max_shift = std::max(max_shift, std::abs(t.a - t.b));
    max_power = std::max(max_power, std::max(t.a, t.b));
  }
  MomentSequence mu = moment_sequence(spec.radial, N - 1 + max_power);
  const double R2 = spec.radial.domain.radius_sq();

  GramMatrix g;
  g.bandwidth = max_shift;
  g.M = Eigen::MatrixXcd::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      if (std::abs(j - k) > max_shift) continue;
      Complex s = 0.0;
      for (const auto& t : spec.terms) {
        if (j + t.a != k + t.b) continue;
        int d = j + t.a;
        s += t.coeff * kPi * mu.scaled_value(d) * std::pow(R2, d);
      }
      g.M(j, k) = s;
    }
  return g;
}

}  // namespace bergman
