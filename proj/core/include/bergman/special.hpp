#pragma once

#include <complex>
#include <vector>

namespace bergman {

// log Gamma(z) for complex z, principal branch, Lanczos approximation.
// Relative accuracy around 1e-13 on the tested range.
std::complex<double> lgamma_complex(std::complex<double> z);

// Gamma(z) for complex z via lgamma_complex.
std::complex<double> tgamma_complex(std::complex<double> z);

// log B(a, b) = lgamma(a) + lgamma(b) - lgamma(a+b), real arguments > 0.
double lbeta(double a, double b);

// B(a, b) with a > 0, b > 0.
double beta_fn(double a, double b);

// Euler's constant computed from its defining limit H_M - log M with
// Richardson acceleration in 1/M; no tabulated constant. Cached.
double euler_gamma();

// H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0.
double harmonic_number(int k);

// Richardson extrapolation of a sequence a(h), a(h/r), a(h/r^2), ...
// assuming an error expansion in integer powers of h starting at h^1.
// values[i] corresponds to step h / r^i. Returns the top extrapolant.
double richardson_limit(const std::vector<double>& values, double r = 2.0);

// Compensated (Kahan) accumulator for long sums.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

struct KahanSumComplex {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace bergman
