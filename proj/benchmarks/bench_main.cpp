#include <benchmark/benchmark.h>

#include "wavrep/dual_density.hpp"
#include "wavrep/msf_wavelet.hpp"
#include "wavrep/rep_engine.hpp"
#include "wavrep/wavelet_set.hpp"

using namespace wavrep;

namespace {

DilationMatrix two() { return validate_dilation({{2}}); }
DilationMatrix diag23() { return validate_dilation({{2, 0}, {0, 3}}); }

void BM_VerifyShannon(benchmark::State& state) {
  const auto A = two();
  TilingParams p;
  p.J = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_wavelet_set(shannon_set(), A, p));
}
BENCHMARK(BM_VerifyShannon)->Arg(4)->Arg(8)->Arg(16);

void BM_VerifySampled(benchmark::State& state) {
  const auto A = diag23();
  const BoxSet E = dilation_annulus(A);
  TilingParams p;
  p.force_sampled = true;
  p.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_wavelet_set(E, A, p));
}
BENCHMARK(BM_VerifySampled)->Arg(10000)->Arg(100000);

void BM_GramShannon(benchmark::State& state) {
  GramSpec params{shannon_set(), two(), 2, state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(params));
}
BENCHMARK(BM_GramShannon)->Arg(4)->Arg(8)->Arg(16);

void BM_PhiForwardExact(benchmark::State& state) {
  const auto A = two();
  const auto f = random_modulated(A, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(phi_forward(f, shannon_set(), A));
}
BENCHMARK(BM_PhiForwardExact);

void BM_IsometrySampled(benchmark::State& state) {
  const auto A = two();
  GaussianSum g;
  g.packets.push_back(GaussianPacket{Complex(1.0, 0.5), {2.0}, 1.0});
  PhiOptions opts;
  opts.resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(isometry_defect(g, shannon_set(), A, opts));
}
BENCHMARK(BM_IsometrySampled)->Arg(64)->Arg(256);

void BM_ConjugationCheck(benchmark::State& state) {
  const auto A = diag23();
  const BoxSet E = dilation_annulus(A);
  const auto f = random_modulated(A, 2, 0);
  const auto g = random_group_element(A, 2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(conjugation_check(A, E, g, f));
}
BENCHMARK(BM_ConjugationCheck);

void BM_FiberHomomorphism(benchmark::State& state) {
  const auto A = two();
  const long K = state.range(0);
  const RealPoint x = RealPoint::pi_units({Rational(3, 2)});
  const auto g1 = random_group_element(A, 3, 0), g2 = random_group_element(A, 3, 1);
  for (auto _ : state) {
    const Eigen::MatrixXcd prod = fiber_matrix(A, x, g1, K).dense() * fiber_matrix(A, x, g2, K).dense();
    benchmark::DoNotOptimize(interior_deviation(prod, fiber_matrix(A, x, group_mul(A, g1, g2), K).dense(), K,
                                                std::labs(g1.m) + std::labs(g2.m)));
  }
}
BENCHMARK(BM_FiberHomomorphism)->Arg(16)->Arg(32)->Arg(64);

void BM_ApproxCharacter(benchmark::State& state) {
  const auto A = diag23();
  const auto target = CharacterTarget::from_phases(8, {Rational(3, 7), Rational(-5, 11)});
  const std::vector<QAElement> F{QAElement{IntVec{1, 2}, 8}, QAElement{IntVec{-3, 4}, 5}, QAElement{IntVec{7, 1}, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(approx_character(A, target, F));
}
BENCHMARK(BM_ApproxCharacter);

}  // namespace

BENCHMARK_MAIN();
