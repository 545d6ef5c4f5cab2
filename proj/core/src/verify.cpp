#include "bergman/verify.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bergman/asymptotics.hpp"
#include "bergman/calculus.hpp"
#include "bergman/domain.hpp"
#include "bergman/errors.hpp"
#include "bergman/kernels.hpp"
#include "bergman/moments.hpp"
#include "bergman/sobolev.hpp"
#include "bergman/special.hpp"
#include "bergman/spectral.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Deterministic sampling. std::uniform_real_distribution is implementation
// defined, so scale raw engine output by hand.
struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}
  double uniform(double a, double b) {
    return a + (b - a) * ((gen() >> 8) * (1.0 / 16777216.0));
  }
  Complex disc_point(double rmax) {
    double r = rmax * std::sqrt(uniform(0.0, 1.0));
    double th = uniform(0.0, 2.0 * kPi);
    return Complex(r * std::cos(th), r * std::sin(th));
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult rel_check(std::string id, std::string prov, double target,
                      double measured, double tol, std::string detail = {}) {
  CheckResult c;
  c.check_id = std::move(id);
  c.provenance = std::move(prov);
  c.target = target;
  c.measured = measured;
  c.tolerance = tol;
  double scale = std::abs(target) > 0 ? std::abs(target) : 1.0;
  c.pass = std::isfinite(measured) && std::abs(measured - target) <= tol * scale;
  c.detail = std::move(detail);
  return c;
}

CheckResult abs_check(std::string id, std::string prov, double target,
                      double measured, double tol, std::string detail = {}) {
  CheckResult c;
  c.check_id = std::move(id);
  c.provenance = std::move(prov);
  c.target = target;
  c.measured = measured;
  c.tolerance = tol;
  c.pass = std::isfinite(measured) && std::abs(measured - target) <= tol;
  c.detail = std::move(detail);
  return c;
}

// measured is a deviation that must stay at or below tol.
CheckResult bound_check(std::string id, std::string prov, double measured,
                        double tol, std::string detail = {}) {
  CheckResult c;
  c.check_id = std::move(id);
  c.provenance = std::move(prov);
  c.target = 0.0;
  c.measured = measured;
  c.tolerance = tol;
  c.pass = std::isfinite(measured) && measured <= tol;
  c.detail = std::move(detail);
  return c;
}

CheckResult flag_check(std::string id, std::string prov, bool expected,
                       bool got, std::string detail = {}) {
  CheckResult c;
  c.check_id = std::move(id);
  c.provenance = std::move(prov);
  c.target = expected ? 1.0 : 0.0;
  c.measured = got ? 1.0 : 0.0;
  c.tolerance = 0.0;
  c.pass = (expected == got);
  c.detail = std::move(detail);
  return c;
}

CheckResult error_check(std::string id, const std::exception& e) {
  CheckResult c;
  c.check_id = std::move(id);
  c.provenance = "execution";
  c.target = 0.0;
  c.measured = std::numeric_limits<double>::quiet_NaN();
  c.tolerance = 0.0;
  c.pass = false;
  c.detail = std::string("exception: ") + e.what();
  return c;
}

RaySamples ray_for(const DiagonalKernelSeries& k, double rho0, double rel_tol,
                   int levels, int min_points, Point dir = {}, double step = 0.5) {
  if (dir.empty()) {
    dir.assign(static_cast<std::size_t>(k.n), Complex(0.0, 0.0));
    dir[0] = Complex(1.0, 0.0);
  }
  auto diag = make_diag_evaluator(k, dir, rel_tol);
  return sample_along_ray(diag, rho0, levels, min_points, step);
}

// Ladder ratio for rays feeding the six-column detection bases: a sqrt(2)
// ladder doubles the certified sample count over the same boundary range.
constexpr double kDenseStep = 0.70710678118654752;

// --- Criterion 1: weighted disc leading constant ------------------------- //

Criterion criterion_weighted_disc() {
  Criterion crit;
  crit.id = "weighted-disc-constant";
  crit.title =
      "Leading boundary constant of power-weighted disc kernels, closed "
      "moments and quadrature moments";
  const double alphas[] = {-0.5, 0.0, 0.5, 1.0, 2.5};
  for (double alpha : alphas) {
    std::string tag = "alpha=" + fmt(alpha);
    try {
      RadialWeightSpec spec{DomainSpec::disc(1.0, Measure::lebesgue), alpha,
                            OneFactor{}};
      auto kern = kernel_from_moments(spec, 200000);
      auto samples = ray_for(kern, 1e-2, 1e-9, 14, 6);
      auto fit = fit_singularity(samples, standard_basis(alpha + 2.0, 3));
      double target = (alpha + 1.0) / kPi;
      crit.checks.push_back(rel_check(
          tag + " closed-moment constant", "beta-moment closed form vs ray fit",
          target, fit.leading(), 1e-4,
          "exponent " + fmt(alpha + 2.0) + ", residual " +
              fmt(fit.residual_max)));
    } catch (const std::exception& e) {
      crit.checks.push_back(error_check(tag + " closed-moment constant", e));
    }
    try {
      RadialWeightSpec spec{DomainSpec::disc(1.0, Measure::lebesgue), alpha,
                            ExpLinearFactor{1.0}};
      auto kern = kernel_from_moments(spec, 7500);
      auto samples = ray_for(kern, 0.2, 1e-9, 14, 6);
      auto fit = fit_singularity(samples, standard_basis(alpha + 2.0, 3));
      double target = (alpha + 1.0) / (kPi * std::exp(1.0));
      crit.checks.push_back(rel_check(
          tag + " quadrature constant",
          "node-doubled Gauss-Jacobi moments vs ray fit", target, fit.leading(),
          1e-2, "factor exp(t), boundary value e"));
    } catch (const std::exception& e) {
      crit.checks.push_back(error_check(tag + " quadrature constant", e));
    }
  }
  return crit;
}

// --- Criterion 2: unweighted boundary power and constant ----------------- //

Criterion criterion_boundary_power() {
  Criterion crit;
  crit.id = "boundary-power";
  crit.title =
      "Diagonal blow-up rate and constant for unweighted disc and ball "
      "kernels";
  try {
    RadialWeightSpec spec{DomainSpec::disc(1.0, Measure::lebesgue), 0.0,
                          OneFactor{}};
    auto kern = kernel_from_moments(spec, 200000);
    auto samples = ray_for(kern, 1e-2, 1e-9, 27, 8, {}, kDenseStep);
    auto fit = fit_singularity(samples, standard_basis(2.0, 3));
    crit.checks.push_back(rel_check("disc constant",
                                    "geometric series closed form", 1.0 / kPi,
                                    fit.leading(), 1e-4));
    SingularityBasis shape;
    shape.p = 2.0;
    shape.power_terms = 3;
    shape.constant_term = false;
    auto free = free_exponent_fit(samples, shape, 1.5, 2.5);
    crit.checks.push_back(abs_check("disc exponent",
                                    "free-exponent residual minimisation", 2.0,
                                    free.p, 1e-3));
    auto ld = detect_log(samples, 2.0, 0.0);
    crit.checks.push_back(flag_check(
        "disc log absent", "log-augmented fit comparison", false,
        ld.presence == LogDetection::Presence::present,
        "improvement factor " + fmt(ld.improvement)));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("disc boundary fit", e));
  }
  try {
    RadialWeightSpec spec{DomainSpec::ball(2, Measure::lebesgue), 0.0,
                          OneFactor{}};
    auto kern = kernel_from_moments(spec, 200000);
    Point dir = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    auto samples = ray_for(kern, 1e-2, 1e-9, 14, 6, dir);
    auto fit = fit_singularity(samples, standard_basis(3.0, 3));
    crit.checks.push_back(rel_check("ball constant",
                                    "binomial series closed form",
                                    2.0 / (kPi * kPi), fit.leading(), 1e-4));
    SingularityBasis shape;
    shape.p = 3.0;
    shape.power_terms = 3;
    shape.constant_term = false;
    auto free = free_exponent_fit(samples, shape, 2.5, 3.5);
    crit.checks.push_back(abs_check("ball exponent",
                                    "free-exponent residual minimisation", 3.0,
                                    free.p, 1e-3));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("ball boundary fit", e));
  }
  return crit;
}

// --- Criterion 3: normalized quadratic weight ---------------------------- //

Criterion criterion_quadratic_weight() {
  Criterion crit;
  crit.id = "quadratic-weight";
  crit.title =
      "Kernel for the normalized weight 2-t on the disc: expansion "
      "coefficients and pointwise closed form";
  try {
    RadialWeightSpec spec{DomainSpec::disc(1.0, Measure::normalized), 0.0,
                          PolynomialFactor{{2.0, -1.0}}};
    auto kern = kernel_from_moments(spec, 200000);
    auto samples = ray_for(kern, 1e-2, 1e-9, 27, 8, {}, kDenseStep);
    // One guard order on both sides (rho and rho log rho columns) so the
    // first unmodeled term sits at rho^2 log rho, below the check tolerances.
    SingularityBasis basis;
    basis.p = 2.0;
    basis.power_terms = 4;
    basis.log_powers = {0.0, -1.0};
    basis.constant_term = false;
    auto fit = fit_singularity(samples, basis);
    crit.checks.push_back(abs_check("rho^-2 coefficient",
                                    "termwise closed-form expansion", 1.0,
                                    fit.coeffs(0), 1e-2));
    crit.checks.push_back(abs_check("rho^-1 coefficient",
                                    "termwise closed-form expansion", -1.0,
                                    fit.coeffs(1), 5e-2));
    crit.checks.push_back(abs_check("log coefficient",
                                    "termwise closed-form expansion", -2.0,
                                    fit.coeffs(4), 5e-2,
                                    "column is log(rho)"));
    auto ld = detect_log(samples, 2.0, 0.0);
    crit.checks.push_back(flag_check(
        "log detected", "log-augmented fit comparison", true,
        ld.presence == LogDetection::Presence::present,
        "improvement factor " + fmt(ld.improvement)));
    double worst = 0.0;
    for (double t : {0.5, 0.9, 0.99}) {
      double x = std::sqrt(t);
      auto ev = evaluate1(kern, Complex(x, 0.0), Complex(x, 0.0), 1e-12);
      double closed = t / ((1.0 - t) * (1.0 - t)) -
                      2.0 / (t * t * t) *
                          (std::log1p(-t) + t + 0.5 * t * t);
      worst = std::max(worst, std::abs(ev.value.real() - closed));
    }
    crit.checks.push_back(bound_check("pointwise closed form",
                                      "elementary antiderivative of the "
                                      "coefficient sum",
                                      worst, 1e-10,
                                      "t in {0.5, 0.9, 0.99}"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("quadratic weight", e));
  }
  return crit;
}

// --- Criterion 4: ball slice lift ---------------------------------------- //

Criterion criterion_ball_slice() {
  Criterion crit;
  crit.id = "ball-slice-lift";
  crit.title =
      "Slice identity between ball kernels and power-weighted disc kernels";
  Rng rng(42);
  std::vector<std::pair<Complex, Complex>> pairs;
  for (int i = 0; i < 20; ++i) {
    pairs.emplace_back(rng.disc_point(0.8), rng.disc_point(0.8));
  }
  for (int m : {1, 2, 3}) {
    try {
      auto res = forelli_rudin_check(m, pairs, 4000);
      crit.checks.push_back(bound_check(
          "extra dimensions m=" + std::to_string(m),
          "ball kernel restricted to a coordinate slice", res.max_rel_dev,
          1e-10, "20 deterministic pairs, |x|,|y| <= 0.8"));
    } catch (const std::exception& e) {
      crit.checks.push_back(
          error_check("extra dimensions m=" + std::to_string(m), e));
    }
  }
  return crit;
}

// --- Criterion 5: Toeplitz kernel routes --------------------------------- //

Criterion criterion_toeplitz_routes() {
  Criterion crit;
  crit.id = "toeplitz-kernel-routes";
  crit.title =
      "Weighted kernel via Toeplitz inversion vs direct Gram inversion, with "
      "section-size contraction";
  AngularWeightSpec w;
  w.radial = RadialWeightSpec{DomainSpec::disc(1.0, Measure::lebesgue), 0.5,
                              OneFactor{}};
  w.terms = {AngularTerm{0, 0, Complex(2.0, 0.0)},
             AngularTerm{1, 0, Complex(0.5, 0.0)},
             AngularTerm{0, 1, Complex(0.5, 0.0)}};
  try {
    const int N = 60;
    auto sec = build_toeplitz(w, N);
    auto gram = monomial_gram(w, N);
    Eigen::LLT<Eigen::MatrixXcd> llt(gram.M);
    if (llt.info() != Eigen::Success) {
      throw ValidityError("Gram matrix is not positive definite");
    }
    auto oracle = [&](Complex x, Complex y) {
      Eigen::VectorXcd vx(N), vy(N);
      Complex px(1.0, 0.0), py(1.0, 0.0);
      for (int k = 0; k < N; ++k) {
        vx(k) = px;
        vy(k) = py;
        px *= x;
        py *= y;
      }
      Eigen::VectorXcd sol = llt.solve(vy);
      return (vx.adjoint() * sol)(0, 0);
    };
    std::vector<Complex> grid = {Complex(0.4, 0.0), Complex(-0.35, 0.0),
                                 Complex(0.3, 0.25), Complex(-0.2, -0.4),
                                 Complex(0.0, 0.45)};
    double worst = 0.0;
    for (Complex x : grid) {
      auto wk = weighted_kernel_via_inverse(sec, x);
      for (Complex y : grid) {
        Complex via_t = evaluate_coefficients(sec, wk.h, y);
        Complex via_g = oracle(x, y);
        worst = std::max(worst, std::abs(via_t - via_g));
      }
    }
    crit.checks.push_back(bound_check(
        "route agreement N=60", "monomial Gram matrix inversion", worst, 1e-8,
        "25 point pairs, |x|,|y| <= 0.5"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("route agreement N=60", e));
  }
  try {
    std::vector<std::pair<Complex, Complex>> pts = {
        {Complex(0.8, 0.0), Complex(0.8, 0.0)},
        {Complex(0.8 * std::cos(0.7), 0.8 * std::sin(0.7)),
         Complex(0.8 * std::cos(-0.3), 0.8 * std::sin(-0.3))},
        {Complex(-0.8, 0.0), Complex(0.0, 0.8)}};
    auto section_values = [&](int N) {
      auto sec = build_toeplitz(w, N);
      std::vector<Complex> vals;
      for (auto& [x, y] : pts) {
        auto wk = weighted_kernel_via_inverse(sec, x);
        vals.push_back(evaluate_coefficients(sec, wk.h, y));
      }
      return vals;
    };
    auto ref = section_values(120);
    std::vector<int> sizes = {20, 40, 60, 80};
    std::vector<double> dev;
    for (int N : sizes) {
      auto vals = section_values(N);
      double d = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        d = std::max(d, std::abs(vals[i] - ref[i]));
      }
      dev.push_back(d);
    }
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
      double ratio = dev[i] > 0 ? dev[i + 1] / dev[i]
                                : std::numeric_limits<double>::infinity();
      crit.checks.push_back(bound_check(
          "section contraction " + std::to_string(sizes[i]) + "->" +
              std::to_string(sizes[i + 1]),
          "reference section of twice the largest size", ratio, 0.999,
          "deviations " + fmt(dev[i]) + " -> " + fmt(dev[i + 1]) +
              " at |x|=|y|=0.8"));
    }
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("section contraction", e));
  }
  return crit;
}

// --- Criterion 6: quadratic-form kernel routes --------------------------- //

Criterion criterion_form_routes() {
  Criterion crit;
  crit.id = "form-kernel-routes";
  crit.title =
      "Reproducing kernel of an operator-deformed inner product via "
      "square-root and direct-inverse routes";
  AngularWeightSpec flat;
  flat.radial = RadialWeightSpec{DomainSpec::disc(1.0, Measure::lebesgue), 0.0,
                                 OneFactor{}};
  flat.terms = {AngularTerm{0, 0, Complex(1.0, 0.0)}};
  Rng rng(7);
  try {
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      int N = 10 + 6 * trial;
      auto sec = build_toeplitz(flat, N);
      Eigen::MatrixXcd B(N, N);
      for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
          B(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
      }
      Eigen::MatrixXcd A = (B.adjoint() * B) / static_cast<double>(N) +
                           Eigen::MatrixXcd::Identity(N, N);
      Complex x = rng.disc_point(0.5);
      Complex y = rng.disc_point(0.5);
      Complex v1 = quadratic_form_kernel(sec, A, x, y);
      Complex v2 = inverse_form_kernel(sec, A, x, y);
      worst = std::max(worst, std::abs(v1 - v2));
    }
    crit.checks.push_back(bound_check(
        "route agreement", "two-route linear algebra", worst, 1e-12,
        "5 random Hermitian positive matrices, N in {10,...,34}"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("route agreement", e));
  }
  try {
    AngularWeightSpec wspec;
    wspec.radial = RadialWeightSpec{DomainSpec::disc(1.0, Measure::lebesgue),
                                    1.0, OneFactor{}};
    wspec.terms = {AngularTerm{0, 0, Complex(1.0, 0.0)}};
    int N = 40;
    auto base = build_toeplitz(flat, N);
    auto tw = build_toeplitz(wspec, N);
    double worst = 0.0;
    std::vector<Complex> grid = {Complex(0.3, 0.1), Complex(-0.4, 0.2),
                                 Complex(0.1, -0.45)};
    for (Complex x : grid) {
      auto wk = weighted_kernel_via_inverse(tw, x);
      for (Complex y : grid) {
        Complex qf = quadratic_form_kernel(base, tw.T, x, y);
        Complex route1 = std::conj(evaluate_coefficients(base, wk.h, y));
        worst = std::max(worst, std::abs(qf - route1));
      }
    }
    crit.checks.push_back(bound_check(
        "Toeplitz deformation consistency",
        "weighted-kernel route through the same section", worst, 1e-12,
        "deformation by the Toeplitz matrix of 1-t"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("Toeplitz deformation consistency", e));
  }
  return crit;
}

// --- Criterion 7: finite-part Laplace transform -------------------------- //

Criterion criterion_finite_part() {
  Criterion crit;
  crit.id = "finite-part-laplace";
  crit.title =
      "Meromorphic continuation of the power-weight Laplace transform against "
      "a subtraction-quadrature oracle";
  const double s_list[] = {-2.75, -2.40, -1.85, -1.30, -0.65,
                           -0.20, 0.35,  0.90,  1.45,  2.80};
  const double p_list[] = {0.8, 2.3};
  try {
    double worst = 0.0;
    std::string worst_at;
    for (double s : s_list) {
      for (double p : p_list) {
        Complex v = partie_finie(Complex(s, 0.0), Complex(p, 0.0));
        double o = regularized_laplace_oracle(s, p, 1e-11);
        double rel = std::abs(v.real() - o) / std::max(1e-300, std::abs(o));
        if (rel > worst) {
          worst = rel;
          worst_at = "s=" + fmt(s) + ", p=" + fmt(p);
        }
      }
    }
    crit.checks.push_back(bound_check(
        "generic orders", "Taylor-subtraction quadrature oracle", worst, 1e-8,
        "20 pairs, worst at " + worst_at));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("generic orders", e));
  }
  try {
    double worst = 0.0;
    for (double s : {-1.0, -2.0}) {
      for (double p : {1.0, 2.0}) {
        Complex v = partie_finie(Complex(s, 0.0), Complex(p, 0.0));
        double o = regularized_laplace_oracle(s, p, 1e-11);
        double rel = std::abs(v.real() - o) / std::max(1e-300, std::abs(o));
        worst = std::max(worst, rel);
      }
    }
    crit.checks.push_back(bound_check(
        "pole orders s=-1,-2", "Taylor-subtraction quadrature oracle", worst,
        1e-6, "log plus harmonic-corrected constant branch"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("pole orders s=-1,-2", e));
  }
  try {
    Complex v = partie_finie(Complex(-1.0, 0.0), Complex(1.0, 0.0));
    crit.checks.push_back(abs_check(
        "Euler constant at s=-1, p=1", "harmonic-number constant formula",
        -euler_gamma(), v.real(), 1e-12));
    double o = regularized_laplace_oracle(-1.0, 1.0, 1e-11);
    crit.checks.push_back(abs_check(
        "oracle Euler constant", "Taylor-subtraction quadrature oracle",
        -euler_gamma(), o, 1e-8));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("Euler constant", e));
  }
  return crit;
}

// --- Criterion 8: derivative-norm boundary constant ---------------------- //

Criterion criterion_derivative_norm() {
  Criterion crit;
  crit.id = "derivative-norm-constant";
  crit.title =
      "Boundary constant and rate for kernels of derivative-sum Sobolev "
      "norms on the unit disc";
  struct Case {
    int m;
    double s;
    double lo, hi;
  };
  const Case cases[] = {{1, 0.5, 0.6, 1.4}, {2, 0.3, 1.0, 1.9},
                        {1, 0.75, 0.2, 0.9}};
  for (auto& cs : cases) {
    std::string tag = "m=" + std::to_string(cs.m) + ", s=" + fmt(cs.s);
    try {
      NormVariant v;
      v.tag = NormVariant::Tag::derivative_sum;
      v.m = cs.m;
      v.s = cs.s;
      auto form = coefficient_form(v, 200000);
      auto kern = sobolev_kernel(form);
      auto samples = ray_for(kern, 1e-2, 1e-9, 14, 6);
      double pstar = 2.0 - 2.0 * cs.s;
      auto fit = fit_singularity(samples, standard_basis(pstar, 3));
      double target = std::tgamma(2.0 - 2.0 * cs.s) /
                      (std::tgamma(2.0 * cs.m - 2.0 * cs.s + 1.0) * kPi);
      crit.checks.push_back(rel_check(tag + " constant",
                                      "gamma-ratio boundary constant", target,
                                      fit.leading(), 1e-2));
      SingularityBasis shape = standard_basis(pstar, 3);
      auto free = free_exponent_fit(samples, shape, cs.lo, cs.hi);
      crit.checks.push_back(abs_check(tag + " exponent",
                                      "free-exponent residual minimisation",
                                      pstar, free.p, 1e-3));
    } catch (const std::exception& e) {
      crit.checks.push_back(error_check(tag, e));
    }
  }
  return crit;
}

// --- Criterion 9: derivative vs normal ratio on a larger disc ------------ //

Criterion criterion_norm_ratio() {
  Criterion crit;
  crit.id = "derivative-normal-ratio";
  crit.title =
      "Radius-power ratio between derivative-sum and normal-derivative "
      "kernel constants on the disc of radius 2";
  const int m = 2;
  const double s = 0.3;
  const double R = 2.0;
  try {
    auto build = [&](NormVariant::Tag tag) {
      NormVariant v;
      v.tag = tag;
      v.m = m;
      v.s = s;
      v.domain = DomainSpec::disc(R, Measure::lebesgue);
      auto form = coefficient_form(v, 200000);
      auto kern = sobolev_kernel(form);
      auto samples = ray_for(kern, 4e-2, 1e-9, 14, 6);
      return fit_singularity(samples, standard_basis(2.0 - 2.0 * s, 3));
    };
    auto sharp = build(NormVariant::Tag::derivative_sum);
    auto flatf = build(NormVariant::Tag::normal_sum);
    double ratio = sharp.leading() / flatf.leading();
    double target = std::pow(R, 2.0 * m);
    crit.checks.push_back(rel_check("constant ratio",
                                    "radius-power law for the two norms",
                                    target, ratio, 2e-2));
    double a_sharp =
        leading_constant(DomainSpec::disc(R, Measure::lebesgue),
                         DerivativeNormLaw{m, s})
            .constant;
    double a_flat = leading_constant(DomainSpec::disc(R, Measure::lebesgue),
                                     NormalNormLaw{m, s})
                        .constant;
    crit.checks.push_back(rel_check("derivative-sum constant",
                                    "gamma-ratio boundary constant", a_sharp,
                                    sharp.leading(), 2e-2));
    crit.checks.push_back(rel_check("normal-sum constant",
                                    "gamma-ratio boundary constant", a_flat,
                                    flatf.leading(), 2e-2));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("radius-power ratio", e));
  }
  return crit;
}

// --- Criterion 10: Hardy-scale spectral powers --------------------------- //

Criterion criterion_hardy_powers() {
  Criterion crit;
  crit.id = "hardy-power-scale";
  crit.title =
      "Boundary rate and constant for complex powers of the model spectral "
      "family on the Hardy space";
  struct Case {
    double s;
    double lo, hi;
  };
  const Case cases[] = {
      {-0.5, 2.5, 3.5}, {0.0, 1.5, 2.5}, {0.25, 1.1, 1.9}, {0.75, 0.2, 0.9}};
  auto model = lambda0_model();
  for (auto& cs : cases) {
    std::string tag = "s=" + fmt(cs.s);
    try {
      auto diag = make_spectral_diag(model, cs.s, 1e-9);
      auto samples = sample_along_ray(diag, 1e-2, 14, 5);
      double pstar = 2.0 - 2.0 * cs.s;
      SingularityBasis shape = standard_basis(pstar, 3);
      auto free = free_exponent_fit(samples, shape, cs.lo, cs.hi);
      crit.checks.push_back(abs_check(tag + " exponent",
                                      "free-exponent residual minimisation",
                                      pstar, free.p, 1e-3));
      auto fit = fit_singularity(samples, standard_basis(pstar, 3));
      double target =
          std::tgamma(2.0 - 2.0 * cs.s) * std::pow(2.0, -2.0 * cs.s) / kPi;
      double displayed = spectral_order_displayed_constant(
          DomainSpec::disc(1.0, Measure::lebesgue), cs.s);
      crit.checks.push_back(rel_check(
          tag + " constant", "gamma-ratio boundary constant", target,
          fit.leading(), 1e-2,
          "displayed-variant constant " + fmt(displayed) +
              ", measured/displayed " + fmt(fit.leading() / displayed)));
    } catch (const std::exception& e) {
      crit.checks.push_back(error_check(tag, e));
    }
  }
  return crit;
}

// --- Criterion 11: holomorphy in the power parameter --------------------- //

Criterion criterion_holomorphy() {
  Criterion crit;
  crit.id = "parameter-holomorphy";
  crit.title =
      "Closed-contour vanishing, route agreement, modulus bound and classical "
      "specialisations for the spectral power kernel";
  auto model = lambda0_model();
  try {
    std::pair<Complex, Complex> pts[] = {
        {Complex(0.4, 0.0), Complex(0.4, 0.0)},
        {Complex(0.7, 0.0), Complex(-0.6, 0.0)}};
    double worst = 0.0;
    for (auto& [x, y] : pts) {
      Complex integral = contour_integral(model, Complex(0.2, -0.3),
                                          Complex(1.2, 0.3), x, y, 4000);
      worst = std::max(worst, std::abs(integral));
    }
    crit.checks.push_back(bound_check(
        "closed contour", "Cauchy theorem for the entire parameter map", worst,
        1e-8, "rectangle 0.2-0.3i to 1.2+0.3i, 4000 nodes per side"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("closed contour", e));
  }
  try {
    const Complex s_vals[] = {Complex(0.3, 0.4), Complex(1.1, -0.2),
                              Complex(-0.4, 0.8), Complex(2.0, 0.0)};
    const std::pair<Complex, Complex> pts[] = {
        {Complex(0.5, 0.0), Complex(0.3, 0.0)},
        {Complex(0.0, 0.6), Complex(-0.4, 0.0)}};
    double worst = 0.0;
    for (Complex s : s_vals) {
      for (auto& [x, y] : pts) {
        Complex a = spectral_kernel(model, s, x, y, 1e-14).value;
        Complex b = lambda0_direct_kernel(s, x, y, 1e-14).value;
        worst = std::max(worst, std::abs(a - b));
      }
    }
    crit.checks.push_back(bound_check("route agreement",
                                      "explicit eigenvalue closed form", worst,
                                      1e-12, "8 parameter-point combinations"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("route agreement", e));
  }
  try {
    Rng rng(1234);
    double worst_ratio = 0.0;
    for (int i = 0; i < 100; ++i) {
      Complex s(rng.uniform(-1.0, 1.5), rng.uniform(-2.0, 2.0));
      Complex x = rng.disc_point(0.85);
      Complex y = rng.disc_point(0.85);
      Complex k = spectral_kernel(model, s, x, y, 1e-12).value;
      Complex sr(s.real(), 0.0);
      Complex kx = spectral_kernel(model, sr, x, x, 1e-12).value;
      Complex ky = spectral_kernel(model, sr, y, y, 1e-12).value;
      double bound = std::sqrt(kx.real() * ky.real());
      worst_ratio = std::max(worst_ratio, std::abs(k) / bound);
    }
    crit.checks.push_back(bound_check(
        "modulus bound", "Cauchy-Schwarz on the coefficient sum", worst_ratio,
        1.0 + 1e-9, "100 deterministic (s, x, y) triples"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("modulus bound", e));
  }
  try {
    const std::pair<Complex, Complex> pts[] = {
        {Complex(0.5, 0.0), Complex(0.2, 0.0)},
        {Complex(0.0, 0.7), Complex(-0.3, 0.4)},
        {Complex(-0.8, 0.0), Complex(0.55, 0.0)}};
    double worst_szego = 0.0, worst_bergman = 0.0;
    for (auto& [x, y] : pts) {
      Complex u = x * std::conj(y);
      Complex szego =
          spectral_kernel(model, Complex(0.5, 0.0), x, y, 1e-13).value;
      worst_szego = std::max(
          worst_szego, std::abs(szego - 1.0 / (2.0 * kPi * (1.0 - u))));
      Complex berg =
          spectral_kernel(model, Complex(0.0, 0.0), x, y, 1e-13).value;
      worst_bergman = std::max(
          worst_bergman,
          std::abs(berg - 1.0 / (kPi * (1.0 - u) * (1.0 - u))));
    }
    crit.checks.push_back(bound_check("Szego specialisation s=1/2",
                                      "boundary geometric series", worst_szego,
                                      1e-10));
    crit.checks.push_back(bound_check("Bergman specialisation s=0",
                                      "derivative of the geometric series",
                                      worst_bergman, 1e-10));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("classical specialisations", e));
  }
  return crit;
}

// --- Criterion 12: coefficient families ---------------------------------- //

Criterion criterion_coefficient_families() {
  Criterion crit;
  crit.id = "coefficient-families";
  crit.title =
      "Singularity structure recovered from abstract coefficient families "
      "with binomial, linear and logarithmic perturbations";
  const int kmax = 200000;
  auto build_from = [&](const std::function<double(int)>& a_of_k) {
    std::vector<double> norms(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
      norms[static_cast<std::size_t>(k)] = 1.0 / (k + 1.0 + a_of_k(k));
    }
    return kernel_from_coefficients(norms, Measure::lebesgue, -1.0, 1.0);
  };
  for (double beta : {0.5, 1.5}) {
    std::string tag = "binomial beta=" + fmt(beta);
    try {
      std::vector<double> a(static_cast<std::size_t>(kmax) + 1);
      a[0] = 1.0;
      for (int k = 0; k < kmax; ++k) {
        a[static_cast<std::size_t>(k) + 1] =
            a[static_cast<std::size_t>(k)] * (k + beta) / (k + 1.0);
      }
      auto kern = build_from([&](int k) {
        return a[static_cast<std::size_t>(k)];
      });
      auto samples = ray_for(kern, 1e-2, 1e-9, 14, 6);
      auto two = fit_two_powers(samples, 1.1, 2.6, 0.2);
      crit.checks.push_back(abs_check(tag + " main exponent",
                                      "binomial-sum closed form", 2.0, two.p,
                                      1e-2));
      crit.checks.push_back(abs_check(tag + " secondary exponent",
                                      "binomial-sum closed form", beta, two.q,
                                      1e-2,
                                      "merged=" +
                                          std::string(two.merged ? "1" : "0")));
    } catch (const std::exception& e) {
      crit.checks.push_back(error_check(tag, e));
    }
  }
  try {
    auto kern = build_from([](int k) { return k + 1.0; });
    auto samples = ray_for(kern, 1e-2, 1e-9, 14, 6);
    auto two = fit_two_powers(samples, 1.1, 2.6, 0.2);
    crit.checks.push_back(flag_check("linear family merged",
                                     "doubled geometric-derivative series",
                                     true, two.merged));
    crit.checks.push_back(abs_check("linear family exponent",
                                    "doubled geometric-derivative series", 2.0,
                                    two.p, 1e-2));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("linear family", e));
  }
  try {
    auto kern = build_from([](int k) {
      return k == 0 ? 0.0 : std::log(static_cast<double>(k));
    });
    auto samples = ray_for(kern, 1e-2, 1e-9, 27, 8, {}, kDenseStep);
    auto ld = detect_log(samples, 2.0, 1.0);
    crit.checks.push_back(flag_check(
        "log family detected", "polylogarithm asymptotics", true,
        ld.presence == LogDetection::Presence::present,
        "improvement factor " + fmt(ld.improvement)));
    crit.checks.push_back(abs_check("log family coefficient",
                                    "polylogarithm asymptotics", -1.0, ld.b,
                                    5e-2, "column is rho^-1 log(rho)"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("log family", e));
  }
  return crit;
}

// --- Criterion 13: norm equivalences ------------------------------------ //

Criterion criterion_norm_equivalence() {
  Criterion crit;
  crit.id = "norm-equivalence-stability";
  crit.title =
      "Equivalence and large-degree stability of coefficient forms for the "
      "Sobolev norm variants";
  const int m = 2;
  const double s = 0.6;
  const int kmax = 100000;
  auto make = [&](NormVariant::Tag tag, NormVariant::Space space) {
    NormVariant v;
    v.tag = tag;
    v.m = m;
    v.s = s;
    v.space = space;
    return coefficient_form(v, kmax);
  };
  try {
    auto ref = make(NormVariant::Tag::gradient_sum,
                    NormVariant::Space::holomorphic);
    struct Named {
      const char* name;
      NormVariant::Tag tag;
    };
    const Named others[] = {
        {"top-plus-mass", NormVariant::Tag::top_plus_mass},
        {"top-plus-jet", NormVariant::Tag::top_plus_jet},
        {"radial-sum", NormVariant::Tag::radial_sum},
        {"radial-top-plus-mass", NormVariant::Tag::radial_top_plus_mass}};
    for (auto& other : others) {
      auto form = make(other.tag, NormVariant::Space::holomorphic);
      double inf = std::numeric_limits<double>::infinity();
      double sup = 0.0;
      for (int k = 10; k <= kmax; ++k) {
        double r = ref.scaled_value(k) / form.scaled_value(k);
        inf = std::min(inf, r);
        sup = std::max(sup, r);
      }
      bool ok = inf > 0.0 && std::isfinite(sup);
      crit.checks.push_back(flag_check(
          std::string("equivalence gradient-sum vs ") + other.name,
          "positive finite ratio range", true, ok,
          "inf " + fmt(inf) + ", sup " + fmt(sup)));
      // Geometric means over decades; drift between consecutive decades
      // must shrink once the ratio settles.
      double gm[3];
      int lo = 100;
      for (int dburst = 0; dburst < 3; ++dburst) {
        int hi = lo * 10;
        KahanSum acc;
        int count = 0;
        for (int k = lo; k < hi && k <= kmax; ++k) {
          acc.add(std::log(ref.scaled_value(k) / form.scaled_value(k)));
          ++count;
        }
        gm[dburst] = std::exp(acc.value() / count);
        lo = hi;
      }
      double drift1 = std::abs(gm[1] / gm[0] - 1.0);
      double drift2 = std::abs(gm[2] / gm[1] - 1.0);
      crit.checks.push_back(bound_check(
          std::string("stability gradient-sum vs ") + other.name,
          "decade geometric-mean drift", std::max(drift1, drift2), 5e-2,
          "drifts " + fmt(drift1) + ", " + fmt(drift2)));
    }
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("holomorphic equivalences", e));
  }
  try {
    auto holo = make(NormVariant::Tag::gradient_sum,
                     NormVariant::Space::holomorphic);
    auto harm = make(NormVariant::Tag::gradient_sum,
                     NormVariant::Space::harmonic);
    double worst = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      worst = std::max(worst,
                       std::abs(holo.scaled_value(k) - harm.scaled_value(k)));
    }
    crit.checks.push_back(bound_check(
        "harmonic coefficient match", "shared one-variable coefficient law",
        worst, 0.0, "harmonic and holomorphic gradient-sum forms"));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("harmonic coefficient match", e));
  }
  return crit;
}

// --- Criterion 14: diagonal operator calculus ---------------------------- //

Criterion criterion_diagonal_calculus() {
  Criterion crit;
  crit.id = "diagonal-calculus";
  crit.title =
      "Order and symbol recovery, multiplicativity, parametrix residuals and "
      "complex powers for diagonal operators";
  DiagonalGTO lambda0{[](int k) { return 1.0 / (2.0 * (k + 1.0)); }};
  try {
    auto est = estimate_order_symbol(lambda0, 64, 131072);
    crit.checks.push_back(abs_check("model order", "explicit eigenvalue law",
                                    -1.0, est.order, 1e-3));
    crit.checks.push_back(abs_check("model symbol", "explicit eigenvalue law",
                                    0.5, est.symbol, 1e-3,
                                    "slope spread " + fmt(est.slope_spread)));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("model order and symbol", e));
  }
  try {
    Rng rng(99);
    double worst_order = 0.0, worst_symbol = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      double ma = rng.uniform(-1.5, 1.5), mb = rng.uniform(-1.5, 1.5);
      double ca = rng.uniform(0.5, 3.0), cb = rng.uniform(0.5, 3.0);
      double ua = rng.uniform(-1.0, 1.0), ub = rng.uniform(-1.0, 1.0);
      DiagonalGTO a{[=](int k) {
        return ca * std::pow(static_cast<double>(k), ma) * (1.0 + ua / k);
      }};
      DiagonalGTO b{[=](int k) {
        return cb * std::pow(static_cast<double>(k), mb) * (1.0 + ub / k);
      }};
      auto ea = estimate_order_symbol(a, 64, 131072);
      auto eb = estimate_order_symbol(b, 64, 131072);
      auto eab = estimate_order_symbol(compose(a, b), 64, 131072);
      worst_order = std::max(worst_order,
                             std::abs(eab.order - (ea.order + eb.order)));
      worst_symbol = std::max(
          worst_symbol, std::abs(eab.symbol - ea.symbol * eb.symbol) /
                            std::abs(ea.symbol * eb.symbol));
    }
    crit.checks.push_back(bound_check(
        "composition order additivity", "product of power-law sequences",
        worst_order, 2e-3, "5 deterministic random pairs"));
    crit.checks.push_back(bound_check(
        "composition symbol multiplicativity", "product of power-law sequences",
        worst_symbol, 2e-3));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("composition law", e));
  }
  try {
    DiagonalGTO shifted{[](int k) { return k + 3.0; }};
    auto mu = parametrix_of_leading(1.0, 1.0);
    DiagonalGTO resid1{[&](int k) {
      return std::abs(shifted.lambda(k) * mu.lambda(k) - 1.0);
    }};
    double slope1 = power_law_slope(resid1.lambda, 100, 100000);
    auto mu0 = parametrix_of_leading(-1.0, 0.5);
    DiagonalGTO resid2{[&](int k) {
      return std::abs(lambda0.lambda(k) * mu0.lambda(k) - 1.0);
    }};
    double slope2 = power_law_slope(resid2.lambda, 100, 100000);
    double worst = std::max(std::abs(slope1 + 1.0), std::abs(slope2 + 1.0));
    crit.checks.push_back(bound_check(
        "parametrix residual decay", "one-over-k residual of the leading term",
        worst, 0.1, "slopes " + fmt(slope1) + ", " + fmt(slope2)));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("parametrix residual decay", e));
  }
  try {
    const Complex powers[] = {Complex(2.0, 0.0), Complex(0.5, 0.0),
                              Complex(0.7, 0.2)};
    double worst_order = 0.0, worst_symbol = 0.0;
    for (Complex s : powers) {
      auto p = complex_power(lambda0, s);
      auto est = estimate_order_symbol(modulus(p), 64, 131072);
      worst_order = std::max(worst_order, std::abs(est.order + s.real()));
      double target = std::pow(2.0, -s.real());
      worst_symbol =
          std::max(worst_symbol, std::abs(est.symbol - target) / target);
    }
    crit.checks.push_back(bound_check("complex power order",
                                      "elementary power identity", worst_order,
                                      1e-2, "s in {2, 1/2, 0.7+0.2i}"));
    crit.checks.push_back(bound_check("complex power symbol",
                                      "elementary power identity", worst_symbol,
                                      1e-2));
  } catch (const std::exception& e) {
    crit.checks.push_back(error_check("complex powers", e));
  }
  return crit;
}

using CriterionFn = Criterion (*)();

const CriterionFn kCriteria[] = {
    criterion_weighted_disc,    criterion_boundary_power,
    criterion_quadratic_weight, criterion_ball_slice,
    criterion_toeplitz_routes,  criterion_form_routes,
    criterion_finite_part,      criterion_derivative_norm,
    criterion_norm_ratio,       criterion_hardy_powers,
    criterion_holomorphy,       criterion_coefficient_families,
    criterion_norm_equivalence, criterion_diagonal_calculus,
};

}  // namespace

bool Criterion::pass() const {
  if (checks.empty()) return false;
  for (auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

int criteria_count() { return static_cast<int>(std::size(kCriteria)); }

Criterion run_criterion(int index) {
  if (index < 1 || index > criteria_count()) {
    throw ParameterError("criterion index out of range");
  }
  return kCriteria[index - 1]();
}

std::vector<Criterion> run_all_criteria() {
  std::vector<Criterion> out;
  out.reserve(std::size(kCriteria));
  for (auto fn : kCriteria) {
    out.push_back(fn());
  }
  return out;
}

}  // namespace bergman
