#include "relaxlab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"

namespace relaxlab {

namespace {

using cplx = std::complex<double>;

// FFTW plans are created under a lock and executed through the new-array
// interface, which is safe to call concurrently.
struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }

  PlanPair get(const Grid& g) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(g.dim(), g.n());
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const auto shape = g.shape();
    int dims[3] = {shape[0], shape[1], shape[2]};
    auto* in = fftw_alloc_real(g.size());
    auto* out = fftw_alloc_complex(g.spectral_size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c(g.dim(), dims, in, out, flags);
    p.c2r = fftw_plan_dft_c2r(g.dim(), dims, out, in, flags);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

class TableCache {
 public:
  std::shared_ptr<const SpectralTables> get(const Grid& g) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(g.dim(), g.n(), g.length());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    auto t = build(g);
    cache_.emplace(key, t);
    return t;
  }

 private:
  static std::shared_ptr<const SpectralTables> build(const Grid& g) {
    auto t = std::make_shared<SpectralTables>();
    const std::size_t ns = g.spectral_size();
    for (auto& k : t->k) k.assign(ns, 0.0);
    t->k2.assign(ns, 0.0);
    t->multiplicity.assign(ns, 1.0);
    t->dealias_mask.assign(ns, 1.0);
    const auto shape = g.spectral_shape();
    const int last = g.dim() - 1;
    const int cut = g.dealias_cutoff();
    std::size_t idx = 0;
    for (int j0 = 0; j0 < shape[0]; ++j0) {
      for (int j1 = 0; j1 < shape[1]; ++j1) {
        for (int j2 = 0; j2 < shape[2]; ++j2, ++idx) {
          const int j[3] = {j0, j1, j2};
          double k2 = 0.0;
          bool keep = true;
          for (int a = 0; a < g.dim(); ++a) {
            const double ka = g.wavenumber(j[a]);
            t->k[a][idx] = ka;
            k2 += ka * ka;
            if (std::abs(g.mode(j[a])) > cut) keep = false;
          }
          t->k2[idx] = k2;
          t->dealias_mask[idx] = keep ? 1.0 : 0.0;
          const int jl = j[last];
          t->multiplicity[idx] = (jl == 0 || jl == g.n() / 2) ? 1.0 : 2.0;
        }
      }
    }
    return t;
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, double>, std::shared_ptr<const SpectralTables>>
      cache_;
};

TableCache& table_cache() {
  static TableCache cache;
  return cache;
}

std::vector<double> pow_weights(const SpectralTables& t, double s,
                                bool homogeneous) {
  std::vector<double> w(t.k2.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double k2 = t.k2[i];
    double base;
    if (homogeneous) {
      base = (k2 == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2, s);
    } else {
      base = std::pow(1.0 + k2, s);
    }
    w[i] = t.multiplicity[i] * base;
  }
  return w;
}

}  // namespace

std::shared_ptr<const SpectralTables> tables(const Grid& grid) {
  return table_cache().get(grid);
}

Spectrum forward(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum s(g);
  const auto plan = plan_cache().get(g);
  // r2c does not modify its input with FFTW_ESTIMATE out-of-place plans.
  fftw_execute_dft_r2c(plan.r2c, const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(s.coeffs.data()));
  const double norm = 1.0 / static_cast<double>(g.size());
  for (auto& c : s.coeffs) c *= norm;
  return s;
}

ScalarField inverse(const Spectrum& s) {
  const Grid& g = s.grid;
  std::vector<cplx> scratch(s.coeffs);  // c2r destroys its input
  std::vector<double> out(g.size());
  const auto plan = plan_cache().get(g);
  fftw_execute_dft_c2r(plan.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  return ScalarField(g, std::move(out));
}

void dealias_in_place(Spectrum& s) {
  const auto t = tables(s.grid);
  kernels::mul_real(s.coeffs, t->dealias_mask, s.coeffs);
}

ScalarField dealias(const ScalarField& f) {
  auto s = forward(f);
  dealias_in_place(s);
  return inverse(s);
}

VectorField dealias(const VectorField& v) {
  std::vector<ScalarField> out;
  for (const auto& c : v.all()) out.push_back(dealias(c));
  return VectorField(std::move(out));
}

namespace spectral {

std::vector<Spectrum> gradient(const Spectrum& f) {
  const auto t = tables(f.grid);
  std::vector<Spectrum> out;
  for (int a = 0; a < f.grid.dim(); ++a) {
    Spectrum d(f.grid);
    kernels::mul_imag(f.coeffs, t->k[a], d.coeffs);
    out.push_back(std::move(d));
  }
  return out;
}

Spectrum divergence(std::span<const Spectrum> v) {
  const Grid& g = v.front().grid;
  if (static_cast<int>(v.size()) != g.dim()) {
    throw DimensionError("divergence needs a d-component field");
  }
  const auto t = tables(g);
  Spectrum out(g);
  for (int a = 0; a < g.dim(); ++a) {
    kernels::add_mul_imag(v[a].coeffs, t->k[a], out.coeffs);
  }
  return out;
}

void inv_laplacian_in_place(Spectrum& s) {
  scale_by_k2(s, [](double k2) { return k2 == 0.0 ? 0.0 : 1.0 / k2; });
}

double weighted_power_sum(const Spectrum& s, std::span<const double> w) {
  return kernels::weighted_power(s.coeffs, w);
}

}  // namespace spectral

VectorField gradient(const ScalarField& f, Dealias mode) {
  auto s = forward(f);
  if (mode == Dealias::on) dealias_in_place(s);
  std::vector<ScalarField> out;
  for (const auto& d : spectral::gradient(s)) out.push_back(inverse(d));
  return VectorField(std::move(out));
}

ScalarField divergence(const VectorField& v, Dealias mode) {
  if (v.components() != v.grid().dim()) {
    throw DimensionError("divergence needs a d-component field");
  }
  std::vector<Spectrum> comps;
  for (const auto& c : v.all()) {
    comps.push_back(forward(c));
    if (mode == Dealias::on) dealias_in_place(comps.back());
  }
  return inverse(spectral::divergence(comps));
}

ScalarField laplacian(const ScalarField& f, Dealias mode) {
  auto s = forward(f);
  if (mode == Dealias::on) dealias_in_place(s);
  spectral::scale_by_k2(s, [](double k2) { return -k2; });
  return inverse(s);
}

VectorField curl(const VectorField& v) {
  const Grid& g = v.grid();
  if (g.dim() != 3 || v.components() != 3) {
    throw DimensionError("curl is defined for 3-component fields on 3-D grids");
  }
  const auto t = tables(g);
  std::array<Spectrum, 3> s{forward(v[0]), forward(v[1]), forward(v[2])};
  std::vector<ScalarField> out;
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    // (curl v)_c = d_a v_b - d_b v_a
    Spectrum r(g);
    kernels::add_mul_imag(s[b].coeffs, t->k[a], r.coeffs);
    std::vector<double> neg(t->k[b].size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -t->k[b][i];
    kernels::add_mul_imag(s[a].coeffs, neg, r.coeffs);
    out.push_back(inverse(r));
  }
  return VectorField(std::move(out));
}

void require_zero_mean(const ScalarField& f, const char* what) {
  const auto s = forward(f);
  const double mean = std::abs(s.coeffs[0]);
  const auto t = tables(f.grid());
  const double rms = std::sqrt(spectral::weighted_power_sum(s, t->multiplicity));
  if (mean > 1e-12 * rms) {
    throw MeanNotZero(std::string(what) + ": input mean " +
                      std::to_string(s.coeffs[0].real()) + " is not zero");
  }
}

ScalarField fractional_op(const ScalarField& f, double sigma) {
  if (sigma < 0.0) require_zero_mean(f, "fractional_op");
  auto s = forward(f);
  if (sigma == 0.0) return inverse(s);
  const double half = 0.5 * sigma;
  spectral::scale_by_k2(s, [half](double k2) {
    return k2 == 0.0 ? 0.0 : std::pow(k2, half);
  });
  return inverse(s);
}

VectorField inv_lap_gradient(const ScalarField& f) {
  require_zero_mean(f, "inv_lap_gradient");
  auto s = forward(f);
  spectral::inv_laplacian_in_place(s);
  std::vector<ScalarField> out;
  for (const auto& d : spectral::gradient(s)) out.push_back(inverse(d));
  return VectorField(std::move(out));
}

double sobolev_norm(const ScalarField& f, double s) {
  const auto t = tables(f.grid());
  const auto w = pow_weights(*t, s, false);
  return std::sqrt(f.grid().volume() *
                   spectral::weighted_power_sum(forward(f), w));
}

double sobolev_norm(const VectorField& v, double s) {
  const auto t = tables(v.grid());
  const auto w = pow_weights(*t, s, false);
  double total = 0.0;
  for (const auto& c : v.all()) {
    total += spectral::weighted_power_sum(forward(c), w);
  }
  return std::sqrt(v.grid().volume() * total);
}

double hom_sobolev_norm(const ScalarField& f, double s) {
  if (s < 0.0) require_zero_mean(f, "hom_sobolev_norm");
  const auto t = tables(f.grid());
  const auto w = pow_weights(*t, s, true);
  return std::sqrt(f.grid().volume() *
                   spectral::weighted_power_sum(forward(f), w));
}

double hom_sobolev_norm(const VectorField& v, double s) {
  double total = 0.0;
  for (const auto& c : v.all()) {
    const double n = hom_sobolev_norm(c, s);
    total += n * n;
  }
  return std::sqrt(total);
}

double quadrature_l2(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<double> sq(f.size());
  kernels::multiply(f.values(), f.values(), sq);
  const double cell = g.volume() / static_cast<double>(g.size());
  return std::sqrt(cell * kernels::sum(sq));
}

}  // namespace relaxlab
