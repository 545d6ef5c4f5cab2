#include "bergman/asymptotics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/special.hpp"

namespace bergman {

RaySamples sample_along_ray(const std::function<EvalResult(double)>& diag,
                            double rho0, int levels, int min_points, double step) {
  if (rho0 <= 0.0) throw ParameterError("ray sampling requires rho0 > 0");
  if (levels < 1) throw ParameterError("ray sampling requires at least one level");
  if (!(step > 0.0 && step < 1.0))
    throw ParameterError("ray sampling requires a ladder ratio in (0, 1)");
  RaySamples out;
  double rho = rho0;
  for (int i = 0; i < levels; ++i, rho *= step) {
    try {
      EvalResult r = diag(rho);
      out.rho.push_back(rho);
      out.value.push_back(r.value.real());
      out.err.push_back(r.tail_bound);
    } catch (const AccuracyError&) {
      // The series cannot be certified this close to the boundary; every
      // smaller rho fails for the same reason, so stop descending.
      out.dropped = levels - i;
      break;
    }
  }
  if (static_cast<int>(out.rho.size()) < min_points) {
    std::ostringstream msg;
    msg << "ray sampling kept " << out.rho.size() << " of " << levels
        << " points, need at least " << min_points
        << "; start farther from the boundary or lengthen the series";
    throw FitError(msg.str());
  }
  return out;
}

std::function<EvalResult(double)> make_diag_evaluator(const DiagonalKernelSeries& k,
                                                      Point dir, double rel_tol) {
  if (static_cast<int>(dir.size()) != k.n)
    throw ParameterError("direction dimension does not match the kernel");
  double norm2 = 0.0;
  for (const Complex& c : dir) norm2 += std::norm(c);
  if (std::abs(norm2 - 1.0) > 1e-12)
    throw ParameterError("direction must be a unit vector");
  return [k, dir, rel_tol](double rho) {
    // |x|^2 = scale - rho, so u = <x,x>/scale = 1 - rho/scale.
    if (rho <= 0.0 || rho >= k.scale)
      throw DomainError("boundary distance outside (0, R^2)");
    double radius = std::sqrt(k.scale - rho);
    Point x(dir.size());
    for (std::size_t i = 0; i < dir.size(); ++i) x[i] = dir[i] * radius;
    // Rough magnitude from a truncated partial sum; only used to convert the
    // relative tolerance into the absolute one evaluate() certifies.
    double u = 1.0 - rho / k.scale;
    int rough_terms = std::min<int>(k.max_degree(), 2048);
    KahanSum rough;
    double up = 1.0;
    for (int d = 0; d <= rough_terms; ++d, up *= u) rough.add(k.coef[d] * up);
    double estimate = std::max(std::abs(rough.value()), 1e-300);
    return evaluate(k, x, x, rel_tol * estimate);
  };
}

namespace {

void basis_row(const SingularityBasis& b, double rho, double* row) {
  int c = 0;
  for (int i = 0; i < b.power_terms; ++i) row[c++] = std::pow(rho, -b.p + i);
  for (double q : b.log_powers) row[c++] = std::pow(rho, -q) * std::log(rho);
  if (b.constant_term) row[c++] = 1.0;
}

std::string column_name(const SingularityBasis& b, int j) {
  std::ostringstream s;
  if (j < b.power_terms) {
    s << "rho^" << -(b.p - j);
  } else if (j < b.power_terms + static_cast<int>(b.log_powers.size())) {
    double q = b.log_powers[j - b.power_terms];
    if (q == 0.0)
      s << "log(rho)";
    else
      s << "rho^" << -q << " log(rho)";
  } else {
    s << "1";
  }
  return s.str();
}

}  // namespace

SingularityBasis standard_basis(double p, int power_terms,
                                std::vector<double> log_powers) {
  SingularityBasis b;
  b.p = p;
  b.power_terms = power_terms;
  b.log_powers = std::move(log_powers);
  b.constant_term = true;
  for (int i = 0; i < power_terms; ++i)
    if (std::abs(-p + i) < 1e-9) b.constant_term = false;
  return b;
}

SingularityFit fit_singularity(const RaySamples& s, const SingularityBasis& basis) {
  const int m = static_cast<int>(s.rho.size());
  const int nc = basis.columns();
  if (nc < 1) throw ParameterError("singularity basis has no columns");
  if (m < nc + 2) {
    std::ostringstream msg;
    msg << "need at least " << nc + 2 << " samples to fit " << nc
        << " columns, got " << m;
    throw FitError(msg.str());
  }

  Eigen::MatrixXd A(m, nc);
  Eigen::VectorXd b(m);
  std::vector<double> row(nc);
  for (int i = 0; i < m; ++i) {
    basis_row(basis, s.rho[i], row.data());
    for (int j = 0; j < nc; ++j) A(i, j) = row[j];
    b(i) = s.value[i];
  }

  // Column scaling keeps the SVD meaningful across wildly different
  // magnitudes (rho^-p vs the constant column).
  Eigen::VectorXd scale(nc);
  for (int j = 0; j < nc; ++j) {
    double mx = A.col(j).cwiseAbs().maxCoeff();
    scale(j) = (mx > 0.0) ? mx : 1.0;
  }
  Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double smax = sv(0), smin = sv(nc - 1);
  if (smin <= smax * 1e-13) {
    // Identify the most correlated pair of scaled columns for the message.
    int ja = 0, jb = 1;
    double best = -1.0;
    for (int j = 0; j < nc; ++j)
      for (int l = j + 1; l < nc; ++l) {
        double c = std::abs(As.col(j).dot(As.col(l))) /
                   (As.col(j).norm() * As.col(l).norm());
        if (c > best) { best = c; ja = j; jb = l; }
      }
    std::ostringstream msg;
    msg << "singular design matrix: columns " << column_name(basis, ja)
        << " and " << column_name(basis, jb)
        << " are numerically collinear on this grid";
    throw FitError(msg.str());
  }

  Eigen::VectorXd xs = svd.solve(b);
  SingularityFit fit;
  fit.basis = basis;
  fit.coeffs = scale.cwiseInverse().asDiagonal() * xs;
  fit.cond = smax / smin;

  Eigen::VectorXd resid = A * fit.coeffs - b;
  fit.residual_max = resid.cwiseAbs().maxCoeff();
  double dof = std::max(1, m - nc);
  double sigma = std::sqrt(resid.squaredNorm() / dof);
  fit.residual_rms = std::sqrt(resid.squaredNorm() / m);

  // Diagonal of (As^T As)^-1 through the SVD, unscaled per column.
  const Eigen::MatrixXd& V = svd.matrixV();
  fit.uncertainty.resize(nc);
  for (int j = 0; j < nc; ++j) {
    double acc = 0.0;
    for (int l = 0; l < nc; ++l) {
      double t = V(j, l) / sv(l);
      acc += t * t;
    }
    fit.uncertainty[j] = sigma * std::sqrt(acc) / scale(j);
  }
  return fit;
}

LogDetection detect_log(const RaySamples& s, double p, double log_q) {
  // Both models carry one order beyond the term under test (the rho^{-p+3}
  // power and the next-lower log column): otherwise the first unmodeled
  // subleading term caps the with-log fit's residual and with it the
  // improvement ratio, no matter how strong the log really is.
  SingularityBasis plain = standard_basis(p, 4);
  SingularityBasis with = plain;
  with.log_powers = {log_q, log_q - 1.0};

  SingularityFit f0 = fit_singularity(s, plain);
  SingularityFit f1 = fit_singularity(s, with);

  LogDetection d;
  d.with_log = f1;
  d.b = f1.coeffs(plain.power_terms);
  d.uncertainty = f1.uncertainty[plain.power_terms];
  double denom = std::max(f1.residual_max, 1e-300);
  d.improvement = f0.residual_max / denom;

  if (d.improvement >= 1e3 && std::abs(d.b) > 10.0 * d.uncertainty)
    d.presence = LogDetection::Presence::present;
  else if (d.improvement > 10.0)
    d.presence = LogDetection::Presence::indeterminate;
  else
    d.presence = LogDetection::Presence::absent;
  return d;
}

namespace {

double residual_at(const RaySamples& s, SingularityBasis shape, double p) {
  shape.p = p;
  // A search step can wander onto a p where two columns collide (e.g. a
  // power hitting rho^0 next to the constant); score it as unusable rather
  // than aborting the whole search.
  try {
    return fit_singularity(s, shape).residual_rms;
  } catch (const FitError&) {
    return std::numeric_limits<double>::infinity();
  }
}

// Golden-section minimization of f on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

FreeExponentFit free_exponent_fit(const RaySamples& s, const SingularityBasis& shape,
                                  double p_lo, double p_hi) {
  if (!(p_lo < p_hi)) throw ParameterError("exponent search needs p_lo < p_hi");
  const int grid = 48;
  double step = (p_hi - p_lo) / grid;
  double best_p = p_lo;
  double best_r = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    double p = p_lo + i * step;
    double r = residual_at(s, shape, p);
    if (r < best_r) { best_r = r; best_p = p; }
  }
  double lo = std::max(p_lo, best_p - step);
  double hi = std::min(p_hi, best_p + step);
  FreeExponentFit out;
  out.p = golden_min([&](double p) { return residual_at(s, shape, p); }, lo, hi, 1e-7);
  SingularityBasis final_shape = shape;
  final_shape.p = out.p;
  out.fit = fit_singularity(s, final_shape);
  return out;
}

namespace {

struct TwoPowerLS {
  double a_p = 0.0, a_q = 0.0, c = 0.0;
  double rms = std::numeric_limits<double>::infinity();
};

TwoPowerLS two_power_ls(const RaySamples& s, double p, double q) {
  const int m = static_cast<int>(s.rho.size());
  Eigen::MatrixXd A(m, 3);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    // Rows are weighted by 1/|value|: samples of a singular quantity span many
    // decades, and an unweighted least-squares problem is dominated by the few
    // largest rows, hiding the weaker power entirely. With relative residuals
    // every decade counts alike. The reported rms is therefore relative.
    double w = 1.0 / std::max(std::abs(s.value[i]), 1e-300);
    A(i, 0) = std::pow(s.rho[i], -p) * w;
    A(i, 1) = std::pow(s.rho[i], -q) * w;
    A(i, 2) = w;
    b(i) = s.value[i] * w;
  }
  Eigen::VectorXd scale(3);
  for (int j = 0; j < 3; ++j) scale(j) = std::max(A.col(j).cwiseAbs().maxCoeff(), 1e-300);
  Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(2) <= svd.singularValues()(0) * 1e-13) return {};
  Eigen::VectorXd x = scale.cwiseInverse().asDiagonal() * svd.solve(b);
  TwoPowerLS r;
  r.a_p = x(0); r.a_q = x(1); r.c = x(2);
  r.rms = std::sqrt((A * x - b).squaredNorm() / m);
  return r;
}

}  // namespace

TwoPowerFit fit_two_powers(const RaySamples& s, double p_lo, double p_hi, double q_lo) {
  if (static_cast<int>(s.rho.size()) < 5)
    throw FitError("two-power fit needs at least 5 samples");
  const int np = 33, nq = 33;
  const double sep = 0.05;  // keep the coarse stage away from the collinear ridge
  const double q_hi_glob = p_hi - sep;
  if (q_hi_glob <= q_lo)
    throw FitError("two-power exponent window is empty");

  // The relative-residual landscape has narrow basins in p (a small error in
  // the dominant exponent is amplified across many decades) right next to a
  // broad near-collinear ridge at q close to p, so a single polished best
  // grid cell tends to settle on the ridge. Seeding one polish per q-row —
  // the best p for each candidate second exponent — guarantees a start near
  // the true smaller exponent no matter how much area the ridge covers.
  struct Cell {
    double r, p, q;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Cell> seeds(nq + 1, {inf, 0.0, 0.0});
  for (int i = 0; i <= np; ++i) {
    double p = p_lo + (p_hi - p_lo) * i / np;
    for (int j = 0; j <= nq; ++j) {
      double q = q_lo + (q_hi_glob - q_lo) * j / nq;
      if (q > p - sep) continue;
      double r = two_power_ls(s, p, q).rms;
      if (r < seeds[j].r) seeds[j] = {r, p, q};
    }
  }
  seeds.erase(std::remove_if(seeds.begin(), seeds.end(),
                             [&](const Cell& c) { return !std::isfinite(c.r); }),
              seeds.end());
  if (seeds.empty()) throw FitError("two-power search found no usable grid point");

  const double pstep0 = (p_hi - p_lo) / np;
  const double qstep0 = (q_hi_glob - q_lo) / nq;
  double best_p = seeds[0].p, best_q = seeds[0].q;
  double best_r = inf;
  for (const Cell& seed : seeds) {
    // Profile minimization. The two exponents are strongly correlated: a
    // relative error of only ~1e-7 in the dominant exponent leaves a
    // structured residual comparable to the weaker component at the deepest
    // samples, which the weaker column absorbs by tilting its exponent, so
    // alternating 1-D refinements stall in a limit cycle far from the joint
    // optimum. Minimizing over p the q-profiled residual removes that
    // coupling: the inner search re-optimizes q for every trial p, and the
    // outer 1-D problem is clean down to the sample noise floor.
    const double q_win_lo = std::max(q_lo, seed.q - 2.0 * qstep0);
    const double q_win_hi_base = seed.q + 2.0 * qstep0;
    auto profiled_q = [&](double p) {
      double hi = std::min(p - sep, q_win_hi_base);
      if (hi <= q_win_lo) return std::numeric_limits<double>::quiet_NaN();
      return golden_min([&](double q) { return two_power_ls(s, p, q).rms; },
                        q_win_lo, hi, 1e-8);
    };
    double bp = golden_min(
        [&](double p) {
          double q = profiled_q(p);
          if (!std::isfinite(q)) return inf;
          return two_power_ls(s, p, q).rms;
        },
        std::max(p_lo, seed.p - pstep0), std::min(p_hi, seed.p + pstep0), 1e-9);
    double bq = profiled_q(bp);
    if (!std::isfinite(bq)) continue;
    double r = two_power_ls(s, bp, bq).rms;
    if (r < best_r) { best_r = r; best_p = bp; best_q = bq; }
  }
  if (!std::isfinite(best_r))
    throw FitError("two-power search found no usable exponent pair");

  TwoPowerLS two = two_power_ls(s, best_p, best_q);
  TwoPowerFit out;
  out.p = best_p; out.q = best_q;
  out.a_p = two.a_p; out.a_q = two.a_q;
  out.residual = two.rms;

  // Degenerate second power: its column contributes nothing, or the exponents
  // collapsed onto the separation guard. Check whether one power explains the
  // data as well; if so report merged exponents.
  double rho_min = *std::min_element(s.rho.begin(), s.rho.end());
  double contrib_q = std::abs(out.a_q) * std::pow(rho_min, -out.q);
  double contrib_p = std::abs(out.a_p) * std::pow(rho_min, -out.p);
  // Either column can be the vestigial one: on one-power data the search may
  // hang the whole signal on the q column and leave the p column with a
  // residual-level coefficient at an arbitrary exponent.
  bool negligible =
      contrib_q <= 1e-8 * contrib_p || contrib_p <= 1e-8 * contrib_q;
  bool collapsed = (best_p - best_q) <= sep * 1.5;
  if (negligible || collapsed) {
    // Exponents inside the separation guard are below the search resolution
    // by design, and a second component at the 1e-8 relative level is not
    // identifiable either way; both situations are reported as one power,
    // with the values taken from a single-exponent refit.
    SingularityBasis one;
    one.power_terms = 1;
    one.constant_term = true;
    FreeExponentFit single = free_exponent_fit(s, one, p_lo, p_hi);
    double single_rel = 0.0;
    const int m = static_cast<int>(s.rho.size());
    for (int i = 0; i < m; ++i) {
      double model = single.fit.coeffs(0) * std::pow(s.rho[i], -single.p) +
                     single.fit.coeffs(1);
      double w = std::max(std::abs(s.value[i]), 1e-300);
      double rel = (model - s.value[i]) / w;
      single_rel += rel * rel;
    }
    out.merged = true;
    out.p = single.p;
    out.q = single.p;
    out.a_p = single.fit.coeffs(0);
    out.a_q = 0.0;
    out.residual = std::sqrt(single_rel / m);
  }
  return out;
}

std::complex<double> partie_finie(std::complex<double> s, std::complex<double> p) {
  if (p.real() <= 0.0)
    throw DomainError("finite part requires Re p > 0");
  // s at a negative integer: continuation value with the log term.
  double sr = std::round(s.real());
  if (std::abs(s.imag()) < 1e-14 && std::abs(s.real() - sr) < 1e-9 && sr <= -1.0) {
    int k = static_cast<int>(-sr) - 1;
    double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
    double fact = std::exp(std::lgamma(k + 1.0));
    double ck = euler_gamma() - harmonic_number(k);
    return (sign / fact) * std::pow(p, static_cast<double>(k)) * (std::log(p) + ck);
  }
  return std::exp(lgamma_complex(s + 1.0) - (s + 1.0) * std::log(p));
}

namespace {

// e^{-x} minus its Taylor polynomial of order K-1, evaluated stably for
// small x by summing the series from degree K.
double exp_remainder(double x, int K) {
  if (std::abs(x) > 0.5) {
    double taylor = 0.0, term = 1.0;
    for (int j = 0; j < K; ++j) { taylor += term; term *= -x / (j + 1); }
    return std::exp(-x) - taylor;
  }
  double term = 1.0;
  for (int j = 1; j <= K; ++j) term *= -x / j;
  KahanSum sum;
  int j = K;
  while (std::abs(term) > 1e-22 * (std::abs(sum.value()) + 1e-300)) {
    sum.add(term);
    ++j;
    term *= -x / j;
    if (j > K + 80) break;
  }
  return sum.value();
}

}  // namespace

double regularized_laplace_oracle(double s, double p, double tol) {
  if (p <= 0.0) throw DomainError("oracle requires p > 0");
  if (s > 30.0 || s < -30.0) throw ParameterError("oracle order out of supported range");

  // Upper piece: smooth on [1, T] with an exponentially small remainder.
  double T = 1.0 + 60.0 / p;
  double upper = adaptive_simpson(
      [s, p](double t) { return std::exp(-p * t + s * std::log(t)); }, 1.0, T,
      tol / 3.0);

  if (s > -1.0) {
    double lower;
    if (s >= 0.0) {
      // t = v^2 lifts the endpoint exponent from s to 2s+1 >= 1; for
      // fractional s the raw integrand's higher derivatives blow up at 0 and
      // the adaptive rule cannot reach tight tolerances there.
      lower = 2.0 * adaptive_simpson(
                        [s, p](double v) {
                          if (v == 0.0) return 0.0;
                          return std::pow(v, 2.0 * s + 1.0) * std::exp(-p * v * v);
                        },
                        0.0, 1.0, tol / 3.0);
    } else {
      // t = v^{1/(s+1)} absorbs the integrable endpoint singularity.
      double e = 1.0 / (s + 1.0);
      lower = (1.0 / (s + 1.0)) *
              adaptive_simpson([p, e](double v) { return std::exp(-p * std::pow(v, e)); },
                               0.0, 1.0, tol / 3.0 * (s + 1.0));
    }
    return lower + upper;
  }

  // s <= -1: subtract the Taylor polynomial under the integral and add the
  // compensation terms in closed form. At a pole s = -k-1 the j = k
  // compensation term would be 1/0; dropping it is exactly the finite part.
  double kr = std::round(-s) - 1.0;
  bool at_pole = std::abs(s + kr + 1.0) < 1e-9;
  int k = at_pole ? static_cast<int>(kr) : -1;
  int K = at_pole ? k + 2 : static_cast<int>(std::ceil(-s)) + 1;

  // After subtraction the integrand is O(t^{K+s}); u = t^2 keeps enough
  // smoothness at 0 for the adaptive rule.
  double lower = 2.0 * adaptive_simpson(
                          [s, p, K](double u) {
                            double t = u * u;
                            if (t == 0.0) return 0.0;
                            return exp_remainder(p * t, K) *
                                   std::pow(t, s) * u;
                          },
                          0.0, 1.0, tol / 3.0);

  KahanSum comp;
  double pj = 1.0;  // (-p)^j / j!
  for (int j = 0; j < K; ++j) {
    if (!(at_pole && j == k)) comp.add(pj / (s + j + 1.0));
    pj *= -p / (j + 1);
  }
  return lower + comp.value() + upper;
}

}  // namespace bergman
