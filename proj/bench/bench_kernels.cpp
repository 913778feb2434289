// Serial reference kernels against their OpenMP versions, and the dense
// Bell-matrix product against the FFT-backed structured one.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cglmp/bell_operator.hpp"
#include "cglmp/kernels.hpp"

using namespace cglmp;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

PhaseSettings random_phases(Dimension d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  PhaseSettings p = PhaseSettings::zeros(d);
  for (auto* v : {&p.phi1, &p.phi2, &p.vphi1, &p.vphi2})
    for (double& x : *v) x = angle(rng);
  return p;
}

template <bool Parallel>
void BM_DenseMatvec(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(d * d, 1);
  const auto x = random_vector(d, 2);
  std::vector<double> y(d);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::dense_matvec(a, x, y);
    else kernels::serial::dense_matvec(a, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d * d));
}

template <bool Parallel>
void BM_ClosedForm(benchmark::State& state) {
  const Dimension d(state.range(0));
  const auto alphas = random_vector(d.size(), 3);
  const auto p = random_phases(d, 4);
  for (auto _ : state) {
    double v = Parallel ? kernels::parallel::closed_form_sum(alphas, p)
                        : kernels::serial::closed_form_sum(alphas, p);
    benchmark::DoNotOptimize(v);
  }
}

template <bool Parallel>
void BM_JointDistribution(benchmark::State& state) {
  const Dimension d(state.range(0));
  const auto alphas = random_vector(d.size(), 5);
  const auto p = random_phases(d, 6);
  std::vector<double> out(d.size() * d.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::joint_distribution(alphas, p, 1, 2, out);
    else kernels::serial::joint_distribution(alphas, p, 1, 2, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_StrategyScan(benchmark::State& state) {
  const Dimension d(state.range(0));
  for (auto _ : state) {
    auto e = Parallel ? kernels::parallel::strategy_scan(d) : kernels::serial::strategy_scan(d);
    benchmark::DoNotOptimize(e);
  }
}

template <Representation R>
void BM_BellMatvec(benchmark::State& state) {
  const auto rule = negative_rule(Dimension(state.range(0)));
  const BellMatrix b = R == Representation::Dense ? build(rule, {Representation::Dense})
                                                  : BellMatrix::structured(rule);
  const auto x = random_vector(b.dimension().size(), 7);
  std::vector<double> y(x.size());
  for (auto _ : state) {
    b.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

}  // namespace

BENCHMARK(BM_DenseMatvec<false>)->Name("dense_matvec/serial")->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_DenseMatvec<true>)->Name("dense_matvec/parallel")->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_ClosedForm<false>)->Name("closed_form/serial")->Arg(128)->Arg(1024);
BENCHMARK(BM_ClosedForm<true>)->Name("closed_form/parallel")->Arg(128)->Arg(1024);
BENCHMARK(BM_JointDistribution<false>)->Name("joint_distribution/serial")->Arg(16)->Arg(64);
BENCHMARK(BM_JointDistribution<true>)->Name("joint_distribution/parallel")->Arg(16)->Arg(64);
BENCHMARK(BM_StrategyScan<false>)->Name("strategy_scan/serial")->Arg(8)->Arg(16);
BENCHMARK(BM_StrategyScan<true>)->Name("strategy_scan/parallel")->Arg(8)->Arg(16);
BENCHMARK(BM_BellMatvec<Representation::Dense>)->Name("bell_matvec/dense")->Arg(512)->Arg(4096);
BENCHMARK(BM_BellMatvec<Representation::Structured>)
    ->Name("bell_matvec/structured")
    ->Arg(512)
    ->Arg(4096)
    ->Arg(200000);

BENCHMARK_MAIN();
