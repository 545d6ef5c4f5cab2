#include <benchmark/benchmark.h>

#include <complex>

#include "bergman/asymptotics.hpp"
#include "bergman/domain.hpp"
#include "bergman/kernels.hpp"
#include "bergman/moments.hpp"
#include "bergman/sobolev.hpp"
#include "bergman/spectral.hpp"
#include "bergman/toeplitz.hpp"

namespace {

using bergman::Complex;

void BM_MomentsClosed(benchmark::State& state) {
  bergman::RadialWeightSpec spec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.5,
      bergman::OneFactor{}};
  for (auto _ : state) {
    auto seq = bergman::moment_sequence(spec, 100000);
    benchmark::DoNotOptimize(seq.scaled.data());
  }
}
BENCHMARK(BM_MomentsClosed)->Unit(benchmark::kMillisecond);

void BM_MomentsQuadrature(benchmark::State& state) {
  bergman::RadialWeightSpec spec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.5,
      bergman::ExpLinearFactor{1.0}};
  for (auto _ : state) {
    auto seq = bergman::moment_sequence(spec, 2000);
    benchmark::DoNotOptimize(seq.scaled.data());
  }
}
BENCHMARK(BM_MomentsQuadrature)->Unit(benchmark::kMillisecond);

void BM_KernelEvaluate(benchmark::State& state) {
  bergman::RadialWeightSpec spec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.0,
      bergman::OneFactor{}};
  auto kern = bergman::kernel_from_moments(spec, 200000);
  Complex x(std::sqrt(0.99), 0.0);
  for (auto _ : state) {
    auto ev = bergman::evaluate1(kern, x, x, 1e-10);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_KernelEvaluate);

void BM_ToeplitzBuild(benchmark::State& state) {
  bergman::AngularWeightSpec w;
  w.radial = bergman::RadialWeightSpec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.5,
      bergman::OneFactor{}};
  w.terms = {bergman::AngularTerm{0, 0, Complex(2.0, 0.0)},
             bergman::AngularTerm{1, 0, Complex(0.5, 0.0)},
             bergman::AngularTerm{0, 1, Complex(0.5, 0.0)}};
  for (auto _ : state) {
    auto sec = bergman::build_toeplitz(w, 60);
    benchmark::DoNotOptimize(sec.T.data());
  }
}
BENCHMARK(BM_ToeplitzBuild)->Unit(benchmark::kMillisecond);

void BM_WeightedKernelSolve(benchmark::State& state) {
  bergman::AngularWeightSpec w;
  w.radial = bergman::RadialWeightSpec{
      bergman::DomainSpec::disc(1.0, bergman::Measure::lebesgue), 0.5,
      bergman::OneFactor{}};
  w.terms = {bergman::AngularTerm{0, 0, Complex(2.0, 0.0)},
             bergman::AngularTerm{1, 0, Complex(0.5, 0.0)},
             bergman::AngularTerm{0, 1, Complex(0.5, 0.0)}};
  auto sec = bergman::build_toeplitz(w, 60);
  Complex x(0.4, 0.1);
  for (auto _ : state) {
    auto wk = bergman::weighted_kernel_via_inverse(sec, x);
    benchmark::DoNotOptimize(wk.h.data());
  }
}
BENCHMARK(BM_WeightedKernelSolve);

void BM_SobolevForm(benchmark::State& state) {
  bergman::NormVariant v;
  v.tag = bergman::NormVariant::Tag::derivative_sum;
  v.m = 2;
  v.s = 0.3;
  for (auto _ : state) {
    auto form = bergman::coefficient_form(v, 100000);
    benchmark::DoNotOptimize(form.scaled.data());
  }
}
BENCHMARK(BM_SobolevForm)->Unit(benchmark::kMillisecond);

void BM_PartieFinie(benchmark::State& state) {
  Complex s(-1.7, 0.4), p(2.3, 0.0);
  for (auto _ : state) {
    Complex v = bergman::partie_finie(s, p);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_PartieFinie);

void BM_SpectralKernel(benchmark::State& state) {
  auto model = bergman::lambda0_model();
  Complex s(0.7, 0.2), x(0.9, 0.0), y(0.6, 0.3);
  for (auto _ : state) {
    auto ev = bergman::spectral_kernel(model, s, x, y, 1e-12);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_SpectralKernel);

void BM_SingularityFit(benchmark::State& state) {
  bergman::RaySamples samples;
  double rho = 1e-2;
  for (int i = 0; i < 9; ++i) {
    samples.rho.push_back(rho);
    samples.value.push_back(3.0 / (rho * rho) - 2.0 / rho +
                            0.7 * std::log(rho) + 0.1);
    samples.err.push_back(1e-12);
    rho *= 0.5;
  }
  auto basis = bergman::standard_basis(2.0, 3);
  basis.log_powers = {0.0};
  for (auto _ : state) {
    auto fit = bergman::fit_singularity(samples, basis);
    benchmark::DoNotOptimize(fit.coeffs.data());
  }
}
BENCHMARK(BM_SingularityFit);

}  // namespace

BENCHMARK_MAIN();
