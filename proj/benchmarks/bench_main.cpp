#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "fvmoor/beam/beam_solver.hpp"
#include "fvmoor/coupling/initialize.hpp"
#include "fvmoor/io/postprocess.hpp"
#include "fvmoor/morph/mesh_morph.hpp"
#include "fvmoor/rotation.hpp"

using namespace fvmoor;

namespace {

const CrossSection kSection = CrossSection::circular(0.003656, 19.0, 0.0567);

BlockTriDiagSystem random_system(std::size_t n) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BlockTriDiagSystem s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 36; ++k) {
      s.lower[i].data()[k] = u(rng);
      s.diag[i].data()[k] = u(rng);
      s.upper[i].data()[k] = u(rng);
    }
    s.diag[i] += 14.0 * Mat6::Identity();
    for (int k = 0; k < 6; ++k) s.rhs[i][k] = u(rng);
  }
  return s;
}

struct BenchmarkLine {
  LoadEnvironment env;
  BeamBC bc;
  BeamState state;
};

const BenchmarkLine& benchmark_line() {
  static const BenchmarkLine line = [] {
    BenchmarkLine l;
    const Vec3 anchor(-1.385, 0.423, -0.5), fairlead(-0.1, 0.1, -0.0736);
    l.state = initialize_line(anchor, fairlead, {kSection, 1.455, 60}, l.env).state;
    l.bc = {EndCondition::pinned(anchor), EndCondition::pinned(fairlead)};
    return l;
  }();
  return line;
}

void BM_BlockSolve(benchmark::State& st) {
  const BlockTriDiagSystem s = random_system(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(solve_block_tridiagonal(s));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_BlockSolve)->RangeMultiplier(2)->Range(16, 256)->Complexity(benchmark::oN);

void BM_Assemble(benchmark::State& st) {
  const BenchmarkLine& l = benchmark_line();
  const StepControl step = StepControl::dynamic(0.02, 0.02);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_system(l.state, l.state, l.env, l.bc, step));
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMicrosecond);

void BM_Residual(benchmark::State& st) {
  const BenchmarkLine& l = benchmark_line();
  const StepControl step = StepControl::dynamic(0.02, 0.02);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_residual(l.state, l.state, l.env, l.bc, step));
}
BENCHMARK(BM_Residual)->Unit(benchmark::kMicrosecond);

void BM_DynamicStep(benchmark::State& st) {
  const BenchmarkLine& l = benchmark_line();
  // Fairlead moving at 5 cm/s in surge.
  const Vec3 f0 = l.state.face_position.empty() ? Vec3(-0.1, 0.1, -0.0736) : l.state.face_position.back();
  BeamBC bc = l.bc;
  bc.fairlead = EndCondition::prescribed([f0](double t) {
    return EndCondition::Motion{f0 + Vec3(0.05 * t, 0, 0), Vec3(0.05, 0, 0)};
  });
  for (auto _ : st) benchmark::DoNotOptimize(advance_step(l.state, l.env, bc, 0.02, 0.02));
}
BENCHMARK(BM_DynamicStep)->Unit(benchmark::kMillisecond);

void BM_Morph(benchmark::State& st) {
  const MorphConfig c = benchmark_morph_config();
  const Quat q = quat_exp<double>(Vec3(0.02, 0.05, 0.01));
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> pts(4096);
  for (Vec3& p : pts) p = Vec3(u(rng), u(rng), 0.3 * u(rng));
  for (auto _ : st) {
    for (const Vec3& p : pts) benchmark::DoNotOptimize(point_displacement(p, Vec3(0.05, 0, 0.02), q, c));
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_Morph);

void BM_Spectrum(benchmark::State& st) {
  TimeSeries s;
  s.name = "heave";
  for (int k = 0; k <= 800; ++k) s.push(k * 0.02, std::sin(std::acos(-1.0) * k * 0.02));
  for (auto _ : st) benchmark::DoNotOptimize(fft_dominant_amplitude(s, 8, 16));
}
BENCHMARK(BM_Spectrum)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
