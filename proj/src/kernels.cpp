#include "relaxlab/kernels.hpp"

#include <omp.h>

#include <atomic>

namespace relaxlab::kernels {

namespace {
std::atomic<int> g_threads{1};

template <class BlockFn>
double blocked_sum_serial(std::size_t n, BlockFn block) {
  double total = 0.0;
  const std::size_t nb = block_count(n);
  for (std::size_t b = 0; b < nb; ++b) {
    total += block(b * kReduceBlock, std::min(n, (b + 1) * kReduceBlock));
  }
  return total;
}

template <class BlockFn>
double blocked_sum_parallel(std::size_t n, BlockFn block) {
  const std::size_t nb = block_count(n);
  std::vector<double> partial(nb, 0.0);
  const auto nbs = static_cast<std::ptrdiff_t>(nb);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nbs; ++b) {
    const auto ub = static_cast<std::size_t>(b);
    partial[ub] = block(ub * kReduceBlock, std::min(n, (ub + 1) * kReduceBlock));
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}
}  // namespace

bool use_parallel() { return g_threads.load() > 1 && !omp_in_parallel(); }
int threads() { return g_threads.load(); }
void set_threads(int n) {
  g_threads.store(std::max(1, n));
  omp_set_num_threads(std::max(1, n));
}

// ---------------------------------------------------------------- serial

namespace serial {

void lincomb(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
}

void axpy(double a, std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
}

void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
}

void divide(std::span<const double> x, std::span<const double> y,
            std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / y[i];
}

void mul_real(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] * factor[i];
}

void mul_imag(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = cplx(-in[i].imag() * factor[i], in[i].real() * factor[i]);
  }
}

void add_mul_imag(std::span<const cplx> in, std::span<const double> factor,
                  std::span<cplx> out) {
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] += cplx(-in[i].imag() * factor[i], in[i].real() * factor[i]);
  }
}

double weighted_power(std::span<const cplx> in, std::span<const double> weight) {
  return blocked_sum_serial(in.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += weight[i] * std::norm(in[i]);
    return s;
  });
}

double sum(std::span<const double> x) {
  return blocked_sum_serial(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace serial

// -------------------------------------------------------------- parallel

namespace parallel {

#define RELAXLAB_OMP_LOOP(n) \
  const auto n_ = static_cast<std::ptrdiff_t>(n); \
  _Pragma("omp parallel for schedule(static)") \
  for (std::ptrdiff_t i = 0; i < n_; ++i)

void lincomb(double a, std::span<const double> x, double b,
             std::span<const double> y, std::span<double> out) {
  RELAXLAB_OMP_LOOP(x.size()) out[i] = a * x[i] + b * y[i];
}

void axpy(double a, std::span<const double> x, std::span<double> out) {
  RELAXLAB_OMP_LOOP(x.size()) out[i] += a * x[i];
}

void multiply(std::span<const double> x, std::span<const double> y,
              std::span<double> out) {
  RELAXLAB_OMP_LOOP(x.size()) out[i] = x[i] * y[i];
}

void divide(std::span<const double> x, std::span<const double> y,
            std::span<double> out) {
  RELAXLAB_OMP_LOOP(x.size()) out[i] = x[i] / y[i];
}

void mul_real(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out) {
  RELAXLAB_OMP_LOOP(in.size()) out[i] = in[i] * factor[i];
}

void mul_imag(std::span<const cplx> in, std::span<const double> factor,
              std::span<cplx> out) {
  RELAXLAB_OMP_LOOP(in.size()) {
    out[i] = cplx(-in[i].imag() * factor[i], in[i].real() * factor[i]);
  }
}

void add_mul_imag(std::span<const cplx> in, std::span<const double> factor,
                  std::span<cplx> out) {
  RELAXLAB_OMP_LOOP(in.size()) {
    out[i] += cplx(-in[i].imag() * factor[i], in[i].real() * factor[i]);
  }
}

#undef RELAXLAB_OMP_LOOP

double weighted_power(std::span<const cplx> in, std::span<const double> weight) {
  return blocked_sum_parallel(in.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += weight[i] * std::norm(in[i]);
    return s;
  });
}

double sum(std::span<const double> x) {
  return blocked_sum_parallel(x.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for reduction(max : m) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

}  // namespace parallel

}  // namespace relaxlab::kernels
