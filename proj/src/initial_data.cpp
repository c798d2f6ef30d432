#include "relaxlab/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "relaxlab/errors.hpp"

namespace relaxlab {

namespace {

using Point = std::array<double, 3>;

std::vector<double> cosine_shape(const InitialDataFamily& f, const Grid& g) {
  if (f.modes.empty()) throw ValidationError("cosine family needs at least one mode");
  const double base = 2.0 * std::numbers::pi / g.length();
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point x = g.position(i);
    for (std::size_t j = 0; j < f.modes.size(); ++j) {
      v[i] += std::cos(base * f.modes[j] * x[j % static_cast<std::size_t>(g.dim())]);
    }
  }
  return v;
}

// Enumerates one representative of every +/- pair of nonzero modes with
// |n_axis| <= cap.
template <class Fn>
void for_each_half_mode(int dim, int cap, Fn&& fn) {
  for (int a = 0; a <= cap; ++a) {
    for (int b = (dim >= 2 ? -cap : 0); b <= (dim >= 2 ? cap : 0); ++b) {
      for (int c = (dim >= 3 ? -cap : 0); c <= (dim >= 3 ? cap : 0); ++c) {
        if (a == 0 && (b < 0 || (b == 0 && c <= 0))) continue;
        fn(a, b, c);
      }
    }
  }
}

std::vector<double> spectral_shape(const InitialDataFamily& f, const Grid& g,
                                   bool random) {
  const int cap = f.modes.empty() ? 3 : f.modes.front();
  if (cap < 1 || cap > g.dealias_cutoff()) {
    throw ValidationError("band limit must lie in [1, n/3]");
  }
  struct Term {
    int n[3];
    double a, b;
  };
  std::vector<Term> terms;
  std::mt19937_64 rng(f.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for_each_half_mode(g.dim(), cap, [&](int a, int b, int c) {
    if (random) {
      const double ca = u(rng);
      terms.push_back({{a, b, c}, ca, u(rng)});
    } else {
      const double w = std::exp(-0.5 * (a * a + b * b + c * c));
      terms.push_back({{a, b, c}, w, 0.0});
    }
  });
  const double base = 2.0 * std::numbers::pi / g.length();
  std::vector<double> v(g.size(), 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point x = g.position(i);
    for (const auto& t : terms) {
      const double ph = base * (t.n[0] * x[0] + t.n[1] * x[1] + t.n[2] * x[2]);
      v[i] += t.a * std::cos(ph) + t.b * std::sin(ph);
    }
    peak = std::max(peak, std::abs(v[i]));
  }
  for (auto& x : v) x /= peak;
  return v;
}

}  // namespace

ScalarField limit_density(const InitialDataFamily& f, const Grid& g) {
  std::vector<double> shape;
  switch (f.family) {
    case DensityFamily::cosine: shape = cosine_shape(f, g); break;
    case DensityFamily::bump: shape = spectral_shape(f, g, false); break;
    case DensityFamily::random: shape = spectral_shape(f, g, true); break;
  }
  for (auto& x : shape) x = 1.0 + f.amplitude * x;
  return ScalarField(g, std::move(shape));
}

ScalarField corrector_density(const InitialDataFamily& f, const Grid& g) {
  if (f.preparation != Preparation::expansion) return ScalarField::constant(g, 0.0);
  const double k = 2.0 * std::numbers::pi * f.corrector_mode / g.length();
  const double amp = f.corrector_amplitude;
  return ScalarField::from_function(g, [=](const Point& x) { return amp * std::cos(k * x[0]); });
}

VectorField original_velocity(const InitialDataFamily& f, const Grid& g,
                              int components) {
  const double k = 2.0 * std::numbers::pi * f.velocity_mode / g.length();
  std::vector<ScalarField> c;
  for (int i = 0; i < components; ++i) {
    if (i < g.dim()) {
      const double amp = f.velocity_amplitude;
      c.push_back(ScalarField::from_function(
          g, [=](const Point& x) { return amp * std::cos(k * x[i]); }));
    } else {
      c.push_back(ScalarField::constant(g, 0.0));
    }
  }
  return VectorField(std::move(c));
}

std::string to_string(DensityFamily f) {
  switch (f) {
    case DensityFamily::cosine: return "cosine";
    case DensityFamily::bump: return "bump";
    case DensityFamily::random: return "random";
  }
  return "cosine";
}

std::string to_string(Preparation p) {
  switch (p) {
    case Preparation::ill: return "ill";
    case Preparation::well: return "well";
    case Preparation::expansion: return "expansion";
  }
  return "ill";
}

DensityFamily parse_density_family(std::string_view s) {
  if (s == "cosine") return DensityFamily::cosine;
  if (s == "bump") return DensityFamily::bump;
  if (s == "random") return DensityFamily::random;
  throw ValidationError("unknown density family '" + std::string(s) + "'");
}

Preparation parse_preparation(std::string_view s) {
  if (s == "ill") return Preparation::ill;
  if (s == "well") return Preparation::well;
  if (s == "expansion") return Preparation::expansion;
  throw ValidationError("unknown preparation '" + std::string(s) + "'");
}

}  // namespace relaxlab
