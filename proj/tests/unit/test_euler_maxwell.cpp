#include <cmath>
#include <numbers>

#include "doctest.h"
#include "relaxlab/errors.hpp"
#include "relaxlab/euler_maxwell.hpp"
#include "relaxlab/spectral.hpp"
#include "test_support.hpp"

using namespace relaxlab;
using relaxlab::testing::max_diff;
using relaxlab::testing::random_band_limited;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField wave(const Grid& g, double amp, double k, int axis, bool sine = false) {
  return ScalarField::from_function(g, [=](const std::array<double, 3>& x) {
    return amp * (sine ? std::sin(k * x[axis]) : std::cos(k * x[axis]));
  });
}

ScalarField zero(const Grid& g) { return ScalarField::constant(g, 0.0); }

VectorField constant_vec(const Grid& g, const Vec3& v) {
  return VectorField({ScalarField::constant(g, v[0]), ScalarField::constant(g, v[1]),
                      ScalarField::constant(g, v[2])});
}

VectorField cross_ref(const VectorField& a, const VectorField& b) {
  return VectorField({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]});
}

VectorField random_vec(const Grid& g, std::uint64_t seed, double amp) {
  return VectorField({random_band_limited(g, 2, seed, amp), random_band_limited(g, 2, seed + 1, amp),
                      random_band_limited(g, 2, seed + 2, amp)});
}

std::vector<double> uniform(double T, int n) {
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) t.push_back(T * i / n);
  return t;
}

// Density varying in two directions so that rho grad phi has a curl.
ScalarField two_mode_density(const Grid& g, double a) {
  return wave(g, a, 1.0, 0) + wave(g, a, 2.0, 1) + 1.0;
}

double l2(const VectorField& v) { return sobolev_norm(v, 0.0); }
}  // namespace

TEST_CASE("em initial data") {
  const Grid g(3, 16, kTwoPi);
  const double d = 0.1;
  const auto rho0 = wave(g, d, 1.0, 0) + 1.0;
  const auto s = make_em_initial(rho0, VectorField::zeros(g, 3), {0.0, 0.0, 1.0});
  // div E = 1 - rho for E = -d sin(x1) e1
  CHECK(max_diff(s.E[0], wave(g, -d, 1.0, 0, true)) < 1e-14);
  CHECK(s.E[1].max_abs() < 1e-15);
  CHECK(s.E[2].max_abs() < 1e-15);
  CHECK(max_diff(s.B, constant_vec(g, {0.0, 0.0, 1.0})) == 0.0);
  CHECK(gauss_residual(s) < 1e-12);
  CHECK(div_b_norm(s) < 1e-15);
  CHECK_THROWS_AS(make_em_initial(rho0 + 0.1, VectorField::zeros(g, 3), {0.0, 0.0, 1.0}),
                  MeanNotOne);

  InitialDataFamily f;
  f.modes = {1, 2};
  const auto ill = make_em_initial(f, g, PressureLaw{}, 0.1, {0.0, 0.0, 1.0});
  CHECK(gauss_residual(ill) < 1e-12);
  f.preparation = Preparation::expansion;
  CHECK_THROWS_AS(make_em_initial(f, g, PressureLaw{}, 0.1, {0.0, 0.0, 1.0}), ValidationError);
}

TEST_CASE("lorentz solve") {
  const Grid g(3, 8, kTwoPi);
  const auto r = random_vec(g, 3, 1.0);
  const auto B = random_vec(g, 7, 2.0) + constant_vec(g, {0.0, 0.0, 1.0});
  for (double alpha : {1.0, 1.0 + 1.0 / 0.01}) {
    for (double beta : {0.0, 0.3, 10.0}) {
      const auto q = solve_lorentz(alpha, beta, r, B);
      const auto back = alpha * q + beta * cross_ref(q, B);
      CHECK(max_diff(back, r) < 1e-13 * std::max(1.0, r.max_abs()));
    }
  }
  CHECK(max_diff(solve_lorentz(2.0, 0.0, r, B), 0.5 * r) < 1e-16);
}

TEST_CASE("maxwell rotation") {
  const Grid g(3, 16, kTwoPi);
  const double eps = 0.3;
  SUBCASE("plane wave returns after one period") {
    // E = cos(x1) e2, B = cos(x1) e3 with omega = 1 / eps
    const VectorField E({zero(g), wave(g, 1.0, 1.0, 0), zero(g)});
    const VectorField B({zero(g), zero(g), wave(g, 1.0, 1.0, 0)});
    const auto [E1, B1] = maxwell_rotation(E, B, kTwoPi * eps, eps);
    CHECK(max_diff(E1, E) < 1e-13);
    CHECK(max_diff(B1, B) < 1e-13);
    // half period flips the sign
    const auto [E2, B2] = maxwell_rotation(E, B, std::numbers::pi * eps, eps);
    CHECK(max_diff(E2, -1.0 * E) < 1e-13);
  }
  SUBCASE("isometry and constraints") {
    const auto E = random_vec(g, 11, 0.5);
    const VectorField A = random_vec(g, 17, 0.5);
    const auto B = curl(A) + constant_vec(g, {0.0, 0.0, 1.0});
    const double before = std::pow(l2(E), 2) + std::pow(l2(B), 2);
    const auto [E1, B1] = maxwell_rotation(E, B, 0.37, eps);
    CHECK(std::pow(l2(E1), 2) + std::pow(l2(B1), 2) == doctest::Approx(before).epsilon(1e-12));
    CHECK(sobolev_norm(divergence(B1), 0.0) < 1e-12);
    CHECK(sobolev_norm(divergence(E1) - divergence(E), 0.0) < 1e-12);
    CHECK(std::abs(B1[2].mean() - 1.0) < 1e-14);
  }
}

TEST_CASE("em step: equilibrium") {
  const Grid g(3, 8, kTwoPi);
  EMParams p;
  p.eps = 0.1;
  const EMState s{ScalarField::constant(g, 1.0), VectorField::zeros(g, 3), VectorField::zeros(g, 3),
                  constant_vec(g, p.b_e)};
  for (auto scheme : {Scheme::imex1, Scheme::ars222}) {
    p.scheme = scheme;
    const auto n = em_step(s, 1e-3, p, PressureLaw{});
    CHECK((n.rho - 1.0).max_abs() < 1e-15);
    CHECK(n.q.max_abs() < 1e-15);
    CHECK(n.E.max_abs() < 1e-15);
    CHECK(max_diff(n.B, s.B) < 1e-15);
  }
}

TEST_CASE("solve_em: constraints and mass over a run") {
  const Grid g(3, 16, kTwoPi);
  const PressureLaw law;
  InitialDataFamily f;
  f.modes = {1, 2};
  EMParams p;
  p.eps = 0.2;
  p.T = 0.1;
  p.scheme = Scheme::ars222;
  p.b_e = {0.0, 0.0, 1.0};
  const auto init = make_em_initial(f, g, law, p.eps, p.b_e);
  const auto ts = uniform(p.T, 4);
  const auto tr = solve_em(init, p, law, ts);
  REQUIRE(tr.states.size() == ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(gauss_residual(tr.states[i]) < 1e-12);
    CHECK(div_b_norm(tr.states[i]) < 1e-12);
    CHECK(std::abs(tr.diag.mass[i] - tr.diag.mass[0]) < 1e-13);
  }
  CHECK(tr.diag.max_step_constraint_change < 1e-12);
}

TEST_CASE("em step: self-convergence in dt") {
  const Grid g(3, 8, kTwoPi);
  const PressureLaw law;
  InitialDataFamily f;
  f.amplitude = 0.05;
  f.modes = {1};
  EMParams p;
  p.eps = 0.5;
  const auto init = make_em_initial(f, g, law, p.eps, p.b_e);
  const double T = 0.1;
  for (auto scheme : {Scheme::imex1, Scheme::ars222}) {
    p.scheme = scheme;
    std::vector<EMState> out;
    for (int n : {10, 20, 40, 320}) {
      EMState s = init;
      for (int k = 0; k < n; ++k) s = em_step(s, T / n, p, law);
      out.push_back(s);
    }
    auto err = [&](int i) {
      return sobolev_norm(out[i].rho - out[3].rho, 0.0) + l2(out[i].E - out[3].E) +
             l2(out[i].B - out[3].B);
    };
    CHECK(std::log2(err(0) / err(1)) >= 1.0);
    CHECK(std::log2(err(1) / err(2)) >= 1.0);
  }
}

TEST_CASE("drift-diffusion limit") {
  const Grid g(3, 16, kTwoPi);
  const PressureLaw law;
  LimitParams lp;
  lp.scheme = Scheme::ars222;

  SUBCASE("linearized decay rate p'(1)|k|^2 + 1") {
    const double d = 1e-3;
    const std::vector<double> ts{0.0, 0.5};
    const auto b = solve_drift_diffusion(wave(g, d, 1.0, 0) + 1.0, ts, lp, law);
    const auto expect = wave(g, d * std::exp(-(law.dp(1.0) + 1.0) * 0.5), 1.0, 0);
    CHECK(sobolev_norm(b.rho[1] - 1.0 - expect, 0.0) / sobolev_norm(expect, 0.0) < 1e-2);
  }

  SUBCASE("mass and limit fields") {
    const auto b = solve_drift_diffusion(two_mode_density(g, 0.1), uniform(0.5, 5), lp, law);
    for (std::size_t i = 0; i < b.times.size(); ++i) {
      CHECK(std::abs(b.rho[i].mean() - 1.0) < 1e-13);
      CHECK(max_diff(b.E[i], electric_field(b.rho[i])) < 1e-15);
      const auto [E, q] = em_limit_fields(b.rho[i], law);
      CHECK(max_diff(b.q[i], q) < 1e-15);
      CHECK(max_diff(b.q[i], -1.0 * gradient(law.p(b.rho[i])) - b.rho[i] * b.E[i]) < 1e-14);
    }
  }

  SUBCASE("constant state and mean check") {
    const auto b = solve_drift_diffusion(ScalarField::constant(g, 1.0), uniform(0.2, 2), lp, law);
    for (const auto& r : b.rho) CHECK((r - 1.0).max_abs() < 1e-15);
    CHECK_THROWS_AS(solve_drift_diffusion(ScalarField::constant(g, 1.1), uniform(0.2, 2), lp, law),
                    MeanNotOne);
  }
}

TEST_CASE("em corrector") {
  const Grid g(3, 16, kTwoPi);
  const PressureLaw law;

  SUBCASE("magnetic corrector of a single mode") {
    const VectorField q({zero(g), zero(g), wave(g, 1.0, 1.0, 0)});
    const VectorField expect({zero(g), wave(g, -1.0, 1.0, 0, true), zero(g)});
    CHECK(max_diff(corrector_magnetic(q), expect) < 1e-14);
  }

  const double T = 0.3;
  LimitParams lp;
  lp.scheme = Scheme::ars222;
  const auto star = solve_drift_diffusion(two_mode_density(g, 0.1), uniform(T, 150), lp, law);
  const DensityHistory h(star.times, star.rho);
  const auto ts = uniform(T, 3);

  SUBCASE("no background field gives no corrector density") {
    const auto c = solve_em_corrector(h, {0.0, 0.0, 0.0}, ts, lp, law);
    for (const auto& r : c.rho1) CHECK(r.max_abs() == 0.0);
  }

  SUBCASE("linear in the background field") {
    const auto c1 = solve_em_corrector(h, {0.0, 0.0, 1.0}, ts, lp, law);
    const auto c2 = solve_em_corrector(h, {0.0, 0.0, 2.0}, ts, lp, law);
    CHECK(c1.rho1.back().max_abs() > 1e-6);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      CHECK(max_diff(c2.rho1[i], 2.0 * c1.rho1[i]) < 1e-12);
      CHECK(std::abs(c1.rho1[i].mean()) < 1e-15);
      CHECK(max_diff(c1.E1[i], electric_field(c1.rho1[i])) < 1e-15);
      const auto [Es, qs] = em_limit_fields(h.at(ts[i]), law);
      CHECK(max_diff(c1.B1[i], corrector_magnetic(qs)) < 1e-14);
    }
    CHECK(c1.rho1.front().max_abs() == 0.0);
  }

  SUBCASE("coarse history is rejected") {
    const DensityHistory coarse({0.0, T}, {star.rho.front(), star.rho.back()});
    CHECK_THROWS_AS(solve_em_corrector(coarse, {0.0, 0.0, 1.0}, ts, lp, law), SamplingTooCoarse);
  }
}
