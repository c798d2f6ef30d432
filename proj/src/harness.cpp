#include "relaxlab/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/spectral.hpp"

namespace relaxlab {

namespace {

bool same_time(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

void require_aligned(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) {
    throw AlignmentError(std::string(what) + ": sample counts differ (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_time(a[i], b[i])) {
      throw AlignmentError(std::string(what) + ": sample " + std::to_string(i) +
                           " is at t=" + std::to_string(a[i]) + " and t=" +
                           std::to_string(b[i]));
    }
  }
}

double sq(double x) { return x * x; }

// ||grad f||_{H^s}^2
double grad_norm2(const ScalarField& f, double s) {
  return sq(sobolev_norm(gradient(f), s));
}

double grad_norm2(const VectorField& v, double s) {
  double total = 0.0;
  for (const auto& c : v.all()) total += grad_norm2(c, s);
  return total;
}

class SupMetric {
 public:
  explicit SupMetric(std::string name) : name_(std::move(name)) {}
  void add(double norm) { value_ = std::max(value_, norm); }
  MetricValue finish() const { return {name_, value_, 0.0}; }

 private:
  std::string name_;
  double value_ = 0.0;
};

// sqrt(int g dt) by the trapezoid rule; g is a squared norm.
class IntegralMetric {
 public:
  explicit IntegralMetric(std::string name) : name_(std::move(name)) {}
  void add(double t, double g) {
    if (started_) integral_ += 0.5 * (t - t_prev_) * (g + g_prev_);
    started_ = true;
    t_prev_ = t;
    g_prev_ = g;
  }
  /// The tail assumes g(t) ~ g(T) exp(-2 rate (t - T)).
  MetricValue finish(double rate) const {
    const double v = std::sqrt(integral_);
    const double tail = std::sqrt(integral_ + g_prev_ / (2.0 * rate)) - v;
    return {name_, v, tail};
  }

 private:
  std::string name_;
  double integral_ = 0.0;
  double t_prev_ = 0.0;
  double g_prev_ = 0.0;
  bool started_ = false;
};

void require_rate(double rate) {
  if (!(rate > 0.0)) throw ValidationError("decay rate must be positive");
}

}  // namespace

VectorField InitialLayer::at(double t) const {
  if (t < 0.0) throw NegativeTime("initial layer evaluated at t=" + std::to_string(t));
  return std::exp(-t / (eps * eps)) * q0;
}

double StreamFunctionSeries::max_residual() const {
  double m = 0.0;
  for (double r : div_residual) m = std::max(m, r);
  return m;
}

StreamFunctionSeries stream_function(const EulerTrajectory& euler, const LimitBundle& limit,
                                     const ScalarField& rho0_eps,
                                     const ScalarField& rho0_star) {
  require_aligned(euler.times, limit.times, "stream_function");
  if (euler.times.empty() || euler.times.front() != 0.0) {
    throw AlignmentError("stream_function: samples must start at t = 0");
  }
  StreamFunctionSeries out;
  VectorField n = -1.0 * inv_lap_gradient(rho0_eps - rho0_star);
  VectorField prev_dq = euler.states[0].q - limit.q[0];
  for (std::size_t i = 0; i < euler.times.size(); ++i) {
    const VectorField dq = euler.states[i].q - limit.q[i];
    if (i > 0) {
      const double h = euler.times[i] - euler.times[i - 1];
      n = n - (0.5 * h) * (prev_dq + dq);
    }
    const ScalarField gap = euler.states[i].rho - limit.rho[i];
    out.times.push_back(euler.times[i]);
    out.div_residual.push_back(sobolev_norm(divergence(n) - gap, 0.0));
    out.N.push_back(n);
    prev_dq = dq;
  }
  return out;
}

const MetricValue& ErrorRow::metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

std::vector<std::string> ErrorTable::metric_names() const {
  std::vector<std::string> names;
  if (!rows.empty()) {
    for (const auto& m : rows.front().metrics) names.push_back(m.name);
  }
  return names;
}

ErrorRow error_report_thm11(const EulerTrajectory& euler, const LimitBundle& limit,
                            const InitialLayer& layer, int m, double decay_rate) {
  require_aligned(euler.times, limit.times, "error_report_thm11");
  require_rate(decay_rate);
  const double s = m - 1;
  SupMetric sup_rho("sup_rho_Hm1");
  IntegralMetric grad_rho("int_grad_rho_Hm1"), q_layer("int_q_layer_Hm1"),
      q_nolayer("int_q_nolayer_Hm1"), rho_l2("int_rho_L2");
  for (std::size_t i = 0; i < euler.times.size(); ++i) {
    const double t = euler.times[i];
    const ScalarField dr = euler.states[i].rho - limit.rho[i];
    const VectorField dq = euler.states[i].q - limit.q[i];
    sup_rho.add(sobolev_norm(dr, s));
    grad_rho.add(t, grad_norm2(dr, s));
    q_layer.add(t, sq(sobolev_norm(dq - layer.at(t), s)));
    q_nolayer.add(t, sq(sobolev_norm(dq, s)));
    rho_l2.add(t, sq(sobolev_norm(dr, 0.0)));
  }
  ErrorRow row{layer.eps, m, euler.times.empty() ? 0.0 : euler.times.back(), {}};
  row.metrics = {sup_rho.finish(), grad_rho.finish(decay_rate), q_layer.finish(decay_rate),
                 rho_l2.finish(decay_rate), q_nolayer.finish(decay_rate)};
  return row;
}

ErrorRow error_report_thm12(const EulerTrajectory& euler, const LimitBundle& limit,
                            const CorrectorBundle& corrector, double eps, int m,
                            double decay_rate) {
  require_aligned(euler.times, limit.times, "error_report_thm12");
  require_aligned(euler.times, corrector.times, "error_report_thm12");
  require_rate(decay_rate);
  const double s = m - 2;
  if (!euler.times.empty()) {
    if (euler.times.front() != 0.0) {
      throw AlignmentError("error_report_thm12: samples must start at t = 0");
    }
    const double r0 =
        sobolev_norm(euler.states[0].rho - limit.rho[0] - eps * corrector.rho1[0], s);
    const double q0 = sobolev_norm(euler.states[0].q - limit.q[0], m - 1);
    if (r0 > eps * eps || q0 > eps) {
      std::ostringstream msg;
      msg << "initial density residual " << r0 << " (bound " << eps * eps
          << "), flux residual " << q0 << " (bound " << eps << ")";
      throw NotWellPrepared(msg.str());
    }
  }
  SupMetric sup_rho("sup_rho_exp_Hm2"), sup_q("sup_q_exp_Hm2");
  IntegralMetric grad_rho("int_grad_rho_exp_Hm2"), q("int_q_Hm2"), q_exp("int_q_exp_Hm2");
  for (std::size_t i = 0; i < euler.times.size(); ++i) {
    const double t = euler.times[i];
    const ScalarField dr = euler.states[i].rho - limit.rho[i] - eps * corrector.rho1[i];
    const VectorField dq = euler.states[i].q - limit.q[i];
    const double dq_exp = sobolev_norm(dq - eps * corrector.q1[i], s);
    sup_rho.add(sobolev_norm(dr, s));
    grad_rho.add(t, grad_norm2(dr, s));
    q.add(t, sq(sobolev_norm(dq, s)));
    sup_q.add(dq_exp);
    q_exp.add(t, sq(dq_exp));
  }
  ErrorRow row{eps, m, euler.times.empty() ? 0.0 : euler.times.back(), {}};
  row.metrics = {sup_rho.finish(), grad_rho.finish(decay_rate), q.finish(decay_rate),
                 sup_q.finish(), q_exp.finish(decay_rate)};
  return row;
}

ErrorRow error_report_em(const EMTrajectory& em, const EMLimitBundle& limit,
                         const EMCorrectorBundle* corrector, const InitialLayer& layer,
                         const Vec3& b_e, int m, double decay_rate) {
  require_aligned(em.times, limit.times, "error_report_em");
  if (corrector) require_aligned(em.times, corrector->times, "error_report_em");
  require_rate(decay_rate);
  const double s = m - 1;
  SupMetric sup_rho("sup_rho_Hm1"), sup_e("sup_E_Hm1"), sup_b("sup_B_Hm1"),
      sup_b_exp("sup_B_exp_Hm2");
  IntegralMetric int_rho("int_rho_Hm"), int_e("int_E_Hm1"), int_grad_b("int_gradB_Hm2"),
      q_layer("int_q_layer_Hm2");
  const double eps = layer.eps;
  for (std::size_t i = 0; i < em.times.size(); ++i) {
    const double t = em.times[i];
    const EMState& st = em.states[i];
    const ScalarField dr = st.rho - limit.rho[i];
    const VectorField db = st.B - VectorField::constant(st.B.grid(), b_e);
    sup_rho.add(sobolev_norm(dr, s));
    sup_e.add(sobolev_norm(st.E - limit.E[i], s));
    sup_b.add(sobolev_norm(db, s));
    int_rho.add(t, sq(sobolev_norm(dr, m)));
    int_e.add(t, sq(sobolev_norm(st.E - limit.E[i], s)));
    int_grad_b.add(t, grad_norm2(st.B, m - 2));
    q_layer.add(t, sq(sobolev_norm(st.q - limit.q[i] - layer.at(t), m - 2)));
    if (corrector) sup_b_exp.add(sobolev_norm(db - eps * corrector->B1[i], m - 2));
  }
  ErrorRow row{eps, m, em.times.empty() ? 0.0 : em.times.back(), {}};
  row.metrics = {sup_rho.finish(),        sup_e.finish(),
                 sup_b.finish(),          int_rho.finish(decay_rate),
                 int_e.finish(decay_rate), int_grad_b.finish(decay_rate),
                 q_layer.finish(decay_rate)};
  if (corrector) row.metrics.push_back(sup_b_exp.finish());
  return row;
}

std::vector<double> sample_times(double eps, double T, const SampleSchedule& sc) {
  if (!(T > 0.0) || !(eps > 0.0)) throw ValidationError("sample_times needs eps, T > 0");
  if (sc.layer_count < 1 || sc.uniform_count < 1 || !(sc.layer_density > 0.0)) {
    throw ValidationError("invalid sample schedule");
  }
  std::vector<double> ts;
  const double h0 = eps * eps / sc.layer_density;
  for (int i = 0; i <= sc.layer_count && i * h0 < T; ++i) ts.push_back(i * h0);
  const double uniform = T / sc.uniform_count;
  double h = h0, t = ts.back();
  while (h * 1.5 < uniform && t + h * 1.5 < T) {
    h *= 1.5;
    t += h;
    ts.push_back(t);
  }
  for (int i = 1; i <= sc.uniform_count; ++i) {
    const double u = i == sc.uniform_count ? T : i * uniform;
    if (u > t && !same_time(u, t)) ts.push_back(u);
  }
  if (!same_time(ts.back(), T)) ts.push_back(T);
  return ts;
}

std::vector<double> merge_times(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double t : all) {
    if (out.empty() || !same_time(out.back(), t)) out.push_back(t);
  }
  return out;
}

std::vector<std::size_t> locate_times(std::span<const double> all,
                                      std::span<const double> subset) {
  std::vector<std::size_t> idx;
  std::size_t j = 0;
  for (double t : subset) {
    while (j < all.size() && all[j] < t && !same_time(all[j], t)) ++j;
    if (j == all.size() || !same_time(all[j], t)) {
      throw AlignmentError("time " + std::to_string(t) + " is not a sample");
    }
    idx.push_back(j);
  }
  return idx;
}

ErrorTable eps_sweep(std::span<const double> ladder,
                     const std::function<ErrorRow(double)>& run_one) {
  if (ladder.size() < 3) {
    throw InsufficientPoints("an epsilon sweep needs at least 3 values, got " +
                             std::to_string(ladder.size()));
  }
  const int n = static_cast<int>(ladder.size());
  std::vector<ErrorRow> rows(ladder.size());
  std::vector<std::exception_ptr> errors(ladder.size());
  const int workers = std::max(1, std::min(kernels::threads(), n));
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int i = 0; i < n; ++i) {
    try {
      rows[i] = run_one(ladder[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      std::ostringstream ctx;
      ctx << "eps=" << ladder[i] << ": ";
      e.rethrow_with(ctx.str());
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ErrorRow& a, const ErrorRow& b) { return a.eps > b.eps; });
  return {std::move(rows)};
}

RateFit fit_rate(std::span<const double> eps, std::span<const double> values) {
  if (eps.size() != values.size()) throw ValidationError("fit_rate: size mismatch");
  if (eps.size() < 3) {
    throw InsufficientPoints("fit_rate needs at least 3 points, got " +
                             std::to_string(eps.size()));
  }
  const double n = static_cast<double>(eps.size());
  std::vector<double> x, y;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !(values[i] > 0.0)) {
      throw ValidationError("fit_rate needs positive eps and error values");
    }
    x.push_back(std::log(eps[i]));
    y.push_back(std::log(values[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_rate needs distinct eps values");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double r2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r2 += sq(y[i] - fit.intercept - fit.slope * x[i]);
  }
  fit.residual = std::sqrt(r2 / n);
  return fit;
}

RateFit fit_rate(const ErrorTable& table, std::string_view metric) {
  std::vector<double> eps, values;
  for (const auto& row : table.rows) {
    eps.push_back(row.eps);
    values.push_back(row.metric(metric).value);
  }
  return fit_rate(eps, values);
}

}  // namespace relaxlab
