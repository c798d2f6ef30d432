#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference in `kernels::serial` and an OpenMP version in
// `kernels::parallel`. The free functions in `kernels::` dispatch on the
// current execution setting. Reductions sum fixed-size blocks in index
// order, so both variants return bitwise identical results for any thread
// count.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace relaxlab::kernels {

using cplx = std::complex<double>;

/// Block length used by deterministic reductions.
inline constexpr std::size_t kReduceBlock = 2048;

inline std::size_t block_count(std::size_t n) {
  return (n + kReduceBlock - 1) / kReduceBlock;
}

namespace serial {

/// out = a*x + b*y
void lincomb(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out);
/// out += a*x
void axpy(double a, std::span<const double> x, std::span<double> out);
void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out);
void divide(std::span<const double> x, std::span<const double> y,
            std::span<double> out);

/// out = factor * in
void mul_real(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out);
/// out = i * factor * in
void mul_imag(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out);
/// out += i * factor * in
void add_mul_imag(std::span<const cplx> in, std::span<const double> factor,
                  std::span<cplx> out);

/// sum_j weight[j] * |in[j]|^2
double weighted_power(std::span<const cplx> in, std::span<const double> weight);
double sum(std::span<const double> x);
double max_abs(std::span<const double> x);

template <class F>
void transform(std::span<const double> x, std::span<double> out, F f) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
}

}  // namespace serial

namespace parallel {

void lincomb(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out);
void axpy(double a, std::span<const double> x, std::span<double> out);
void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out);
void divide(std::span<const double> x, std::span<const double> y,
            std::span<double> out);
void mul_real(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out);
void mul_imag(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out);
void add_mul_imag(std::span<const cplx> in, std::span<const double> factor,
                  std::span<cplx> out);
double weighted_power(std::span<const cplx> in, std::span<const double> weight);
double sum(std::span<const double> x);
double max_abs(std::span<const double> x);

template <class F>
void transform(std::span<const double> x, std::span<double> out, F f) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(x[i]);
}

}  // namespace parallel

/// True when kernels should use their OpenMP variant: more than one thread
/// configured and not already inside a parallel region.
bool use_parallel();

/// Number of threads kernels may use (1 means the serial reference).
int threads();
void set_threads(int n);

inline void lincomb(double a, std::span<const double> x, double b,
                    std::span<const double> y, std::span<double> out) {
  use_parallel() ? parallel::lincomb(a, x, b, y, out)
                 : serial::lincomb(a, x, b, y, out);
}
inline void axpy(double a, std::span<const double> x, std::span<double> out) {
  use_parallel() ? parallel::axpy(a, x, out) : serial::axpy(a, x, out);
}
inline void multiply(std::span<const double> x, std::span<const double> y,
                     std::span<double> out) {
  use_parallel() ? parallel::multiply(x, y, out) : serial::multiply(x, y, out);
}
inline void divide(std::span<const double> x, std::span<const double> y,
                   std::span<double> out) {
  use_parallel() ? parallel::divide(x, y, out) : serial::divide(x, y, out);
}
inline void mul_real(std::span<const cplx> in, std::span<const double> factor,
                     std::span<cplx> out) {
  use_parallel() ? parallel::mul_real(in, factor, out)
                 : serial::mul_real(in, factor, out);
}
inline void mul_imag(std::span<const cplx> in, std::span<const double> factor,
                     std::span<cplx> out) {
  use_parallel() ? parallel::mul_imag(in, factor, out)
                 : serial::mul_imag(in, factor, out);
}
inline void add_mul_imag(std::span<const cplx> in,
                         std::span<const double> factor, std::span<cplx> out) {
  use_parallel() ? parallel::add_mul_imag(in, factor, out)
                 : serial::add_mul_imag(in, factor, out);
}
inline double weighted_power(std::span<const cplx> in,
                             std::span<const double> weight) {
  return use_parallel() ? parallel::weighted_power(in, weight)
                        : serial::weighted_power(in, weight);
}
inline double sum(std::span<const double> x) {
  return use_parallel() ? parallel::sum(x) : serial::sum(x);
}
inline double max_abs(std::span<const double> x) {
  return use_parallel() ? parallel::max_abs(x) : serial::max_abs(x);
}
template <class F>
void transform(std::span<const double> x, std::span<double> out, F f) {
  use_parallel() ? parallel::transform(x, out, f)
                 : serial::transform(x, out, f);
}

}  // namespace relaxlab::kernels
