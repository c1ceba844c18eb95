#include <benchmark/benchmark.h>

#include <numbers>

#include "qcp/domain.hpp"
#include "qcp/evolution.hpp"
#include "qcp/krylov.hpp"
#include "qcp/model.hpp"
#include "qcp/pump.hpp"

namespace {

qcp::AahSchedule reference_schedule() {
  return qcp::AahSchedule(1.0, -10.0, qcp::PumpProgram::constant(0.02, 2 * std::numbers::pi / 0.02));
}

void BM_QxpBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qcp::QxpParameters q;
  q.n_sites = n;
  q.lambda.assign(1, 0.0);
  for (double h : qcp::ssh_couplings(n, 1.0, 10.0)) q.lambda.push_back(h);
  q.delta.assign(static_cast<std::size_t>(n), 0.0);
  q.seed_boundary = true;
  for (auto _ : state) benchmark::DoNotOptimize(qcp::build_qxp_hamiltonian(q));
  state.SetComplexityN(1 << n);
}
BENCHMARK(BM_QxpBuild)->DenseRange(8, 14, 2)->Unit(benchmark::kMicrosecond);

void BM_RydbergDirectBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = qcp::rydberg_pump_parameters(reference_schedule(), n, -500.0);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcp::build_rydberg_hamiltonian(p, t));
    t += 0.1;
  }
}
BENCHMARK(BM_RydbergDirectBuild)->DenseRange(8, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_RydbergPumpAssembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto gen = qcp::rydberg_pump_generator(reference_schedule(), n, -500.0);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.at(t));
    t += 0.1;
  }
}
BENCHMARK(BM_RydbergPumpAssembly)->DenseRange(8, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_KrylovStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = qcp::rydberg_pump_generator(reference_schedule(), n, -500.0).at(10.0);
  std::vector<qcp::Complex> v(h.dim(), 0.0);
  v[1] = 1.0;
  qcp::KrylovPropagator prop;
  for (auto _ : state) prop.propagate(h, v, 0.005, 1e-8);
  state.counters["matvecs/step"] =
      benchmark::Counter(static_cast<double>(prop.stats().matvecs), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_KrylovStep)->DenseRange(8, 12, 2)->Unit(benchmark::kMicrosecond);

void BM_DomainPumpPeriod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = reference_schedule();
  const auto gen = qcp::domain_pump_generator(s, n);
  const auto grid = qcp::uniform_grid(s.program().duration(), 61);
  const auto psi0 = qcp::QuantumState::seed(qcp::BasisKind::domain, n);
  for (auto _ : state) benchmark::DoNotOptimize(qcp::evolve(gen, psi0, grid));
}
BENCHMARK(BM_DomainPumpPeriod)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_SparseApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = qcp::rydberg_pump_generator(reference_schedule(), n, -500.0).at(3.0);
  std::vector<qcp::Complex> in(h.dim(), qcp::Complex(1.0, 0.5));
  std::vector<qcp::Complex> out(h.dim());
  for (auto _ : state) {
    h.apply(in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(h.nnz()) * 24);
}
BENCHMARK(BM_SparseApply)->DenseRange(8, 14, 2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
