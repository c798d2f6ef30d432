// Serial reference vs OpenMP kernels, plus one full spectral gradient.
//   ./bench_kernels --benchmark_filter=weighted_power

#include <benchmark/benchmark.h>

#include <random>

#include "relaxlab/kernels.hpp"
#include "relaxlab/spectral.hpp"

namespace k = relaxlab::kernels;

namespace {

std::vector<double> random_vec(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::vector<k::cplx> random_cvec(std::size_t n) {
  const auto re = random_vec(n);
  std::vector<k::cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], re[n - 1 - i]};
  return v;
}

template <bool Parallel>
void BM_lincomb(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = random_vec(n), y = random_vec(n);
  std::vector<double> out(n);
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::lincomb(0.5, x, 2.0, y, out);
    else k::serial::lincomb(0.5, x, 2.0, y, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetBytesProcessed(st.iterations() * static_cast<std::int64_t>(3 * n * sizeof(double)));
}

template <bool Parallel>
void BM_mul_imag(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto c = random_cvec(n);
  const auto f = random_vec(n);
  std::vector<k::cplx> out(n);
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::mul_imag(c, f, out);
    else k::serial::mul_imag(c, f, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_weighted_power(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto c = random_cvec(n);
  const auto w = random_vec(n);
  for (auto _ : st) {
    double r = Parallel ? k::parallel::weighted_power(c, w)
                        : k::serial::weighted_power(c, w);
    benchmark::DoNotOptimize(r);
  }
}

void BM_gradient(benchmark::State& st) {
  k::set_threads(static_cast<int>(st.range(1)));
  const relaxlab::Grid g(3, static_cast<int>(st.range(0)), 6.283185307179586);
  const auto f = relaxlab::ScalarField::from_function(
      g, [](const std::array<double, 3>& x) { return std::sin(x[0]) * std::cos(x[1] + x[2]); });
  for (auto _ : st) {
    auto grad = relaxlab::gradient(f);
    benchmark::DoNotOptimize(grad[0].values().data());
  }
  k::set_threads(1);
}

}  // namespace

BENCHMARK(BM_lincomb<false>)->Name("lincomb/serial")->Range(1 << 12, 1 << 21);
BENCHMARK(BM_lincomb<true>)->Name("lincomb/parallel")->Range(1 << 12, 1 << 21);
BENCHMARK(BM_mul_imag<false>)->Name("mul_imag/serial")->Range(1 << 12, 1 << 21);
BENCHMARK(BM_mul_imag<true>)->Name("mul_imag/parallel")->Range(1 << 12, 1 << 21);
BENCHMARK(BM_weighted_power<false>)->Name("weighted_power/serial")->Range(1 << 12, 1 << 21);
BENCHMARK(BM_weighted_power<true>)->Name("weighted_power/parallel")->Range(1 << 12, 1 << 21);
BENCHMARK(BM_gradient)->Name("gradient3d")->Args({32, 1})->Args({32, 4})->Args({64, 1})->Args({64, 4});

BENCHMARK_MAIN();
