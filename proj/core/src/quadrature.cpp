#include "bergman/quadrature.hpp"

#include <cmath>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

// Value of P_n^{(a,b)} and P_{n-1}^{(a,b)} at z by the three-term recurrence.
struct JacobiEval {
  double pn, pnm1;
};

JacobiEval jacobi_pair(int n, double a, double b, double z) {
  double p1 = (a - b + (2.0 + a + b) * z) / 2.0;
  double p2 = 1.0;
  if (n == 1) return {p1, p2};
  for (int j = 2; j <= n; ++j) {
    double p3 = p2;
    p2 = p1;
    double t = 2.0 * j + a + b;
    double c1 = 2.0 * j * (j + a + b) * (t - 2.0);
    double c2 = (t - 1.0) * (a * a - b * b + t * (t - 2.0) * z);
    double c3 = 2.0 * (j - 1.0 + a) * (j - 1.0 + b) * t;
    p1 = (c2 * p2 - c3 * p3) / c1;
  }
  return {p1, p2};
}

double jacobi_deriv(int n, double a, double b, double z, const JacobiEval& p) {
  double t = 2.0 * n + a + b;
  return (n * (a - b - t * z) * p.pn + 2.0 * (n + a) * (n + b) * p.pnm1) /
         (t * (1.0 - z * z));
}

}  // namespace

GaussJacobiRule::GaussJacobiRule(int n, double alpha, double beta) {
  if (n < 1) throw ParameterError("GaussJacobiRule: need n >= 1");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw ParameterError("GaussJacobiRule: weight exponents must be > -1");
  x.resize(n);
  w.resize(n);
  const double a = alpha, b = beta;
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    // Initial guesses: standard empirical formulas near the endpoints,
    // cubic extrapolation through earlier roots in the interior.
    if (i == 0) {
      double an = a / n, bn = b / n;
      double r1 = (1.0 + a) * (2.78 / (4.0 + n * n) + 0.768 * an / n);
      double r2 = 1.0 + 1.48 * an + 0.96 * bn + 0.452 * an * an + 0.83 * an * bn;
      z = 1.0 - r1 / r2;
    } else if (i == 1) {
      double r1 = (4.1 + a) / ((1.0 + a) * (1.0 + 0.156 * a));
      double r2 = 1.0 + 0.06 * (n - 8.0) * (1.0 + 0.12 * a) / n;
      double r3 = 1.0 + 0.012 * b * (1.0 + 0.25 * std::fabs(a)) / n;
      z -= (1.0 - z) * r1 * r2 * r3;
    } else if (i == 2) {
      double r1 = (1.67 + 0.28 * a) / (1.0 + 0.37 * a);
      double r2 = 1.0 + 0.22 * (n - 8.0) / n;
      double r3 = 1.0 + 8.0 * b / ((6.28 + b) * n * n);
      z -= (x[0] - z) * r1 * r2 * r3;
    } else if (i == n - 2 && n > 4) {
      double r1 = (1.0 + 0.235 * b) / (0.766 + 0.119 * b);
      double r2 = 1.0 / (1.0 + 0.639 * (n - 4.0) / (1.0 + 0.71 * (n - 4.0)));
      double r3 = 1.0 / (1.0 + 20.0 * a / ((7.5 + a) * n * n));
      z += (z - x[i - 2]) * r1 * r2 * r3;
    } else if (i == n - 1 && n > 3) {
      double r1 = (1.0 + 0.37 * b) / (1.67 + 0.28 * b);
      double r2 = 1.0 / (1.0 + 0.22 * (n - 8.0) / n);
      double r3 = 1.0 / (1.0 + 8.0 * a / ((6.28 + a) * n * n));
      z += (z - x[i - 2]) * r1 * r2 * r3;
    } else {
      z = 3.0 * x[i - 1] - 3.0 * x[i - 2] + x[i - 3];
    }

    JacobiEval p{};
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      p = jacobi_pair(n, a, b, z);
      pp = jacobi_deriv(n, a, b, z, p);
      double z1 = z;
      z = z1 - p.pn / pp;
      // Keep the iterate inside (-1, 1) and below the previous root.
      if (!(z < 1.0)) z = 0.5 * (z1 + 1.0);
      if (!(z > -1.0)) z = 0.5 * (z1 - 1.0);
      if (i > 0 && z >= x[i - 1]) z = 0.5 * (z1 + x[i - 1]);
      if (std::fabs(z - z1) <= 1e-15 * (1.0 + std::fabs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw AccuracyError("GaussJacobiRule: Newton iteration stalled", z, 0.0);
    p = jacobi_pair(n, a, b, z);
    pp = jacobi_deriv(n, a, b, z, p);
    x[i] = z;
    double t = 2.0 * n + a + b;
    w[i] = std::exp(std::lgamma(a + n) + std::lgamma(b + n) - std::lgamma(n + 1.0) -
                    std::lgamma(n + a + b + 1.0)) *
           t * std::pow(2.0, a + b) / (pp * p.pnm1);
  }
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth, int max_depth, bool& ok) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth >= max_depth) {
    ok = false;
    return left + right + delta / 15.0;
  }
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1, max_depth, ok) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1, max_depth, ok);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  if (!(b > a)) throw ParameterError("adaptive_simpson: need b > a");
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  bool ok = true;
  double v = simpson_step(f, a, b, fa, fm, fb, whole, tol, 0, max_depth, ok);
  if (!ok) throw AccuracyError("adaptive_simpson: depth limit reached", v, tol);
  return v;
}

}  // namespace bergman
