#include "relaxlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/spectral.hpp"

namespace relaxlab {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double max_drift(const std::vector<double>& mass) {
  double d = 0.0;
  for (double v : mass) d = std::max(d, std::abs(v - mass.front()));
  return d;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

template <class T>
std::vector<T> pick(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

LimitParams limit_params(const ExperimentConfig& cfg) {
  LimitParams lp;
  lp.dt = cfg.dt;
  lp.cfl = cfg.cfl;
  lp.scheme = cfg.scheme;
  return lp;
}

// Uniform history grid every four parabolic steps, ending at T.
std::vector<double> history_times(double T, double cap) {
  std::vector<double> out;
  const double h = 4.0 * cap;
  const long n = static_cast<long>(std::ceil(T / h));
  for (long i = 0; i < n; ++i) out.push_back(static_cast<double>(i) * h);
  out.push_back(T);
  return out;
}

double slowest_decay(const ExperimentConfig& cfg) {
  const double k = 2.0 * std::numbers::pi / cfg.L;
  const double rate = cfg.law.dp(1.0) * k * k;
  return cfg.system == System::em ? rate + 1.0 : rate;
}

ErrorRow run_euler(const ExperimentConfig& cfg, double eps, RunDiagnostics& diag) {
  const Grid g(cfg.d, cfg.n, cfg.L);
  const auto ts = sample_times(eps, cfg.T, cfg.samples);
  RelaxParams p;
  p.eps = eps;
  p.T = cfg.T;
  p.dt = cfg.dt;
  p.cfl = cfg.cfl;
  p.scheme = cfg.scheme;
  p.layer_substeps = cfg.layer_substeps;
  p.m = cfg.m;
  const EulerState init = make_euler_initial(cfg.family, g, cfg.law, eps);
  const EulerTrajectory traj = solve_euler(init, p, cfg.law, ts);
  diag.steps = traj.diag.steps.steps;
  diag.min_dt = traj.diag.steps.min_dt;
  diag.max_dt = traj.diag.steps.max_dt;
  diag.mass_drift = max_drift(traj.diag.mass);
  diag.max_energy_ratio = max_of(traj.diag.energy) / traj.diag.initial_energy;

  const ScalarField rho_star0 = limit_density(cfg.family, g);
  const LimitParams lp = limit_params(cfg);
  const double rate = slowest_decay(cfg);

  if (cfg.family.preparation == Preparation::ill) {
    const LimitBundle lim = solve_porous_medium(rho_star0, ts, lp, cfg.law);
    std::vector<double> mass;
    for (const auto& r : lim.rho) mass.push_back(r.mean());
    diag.limit_mass_drift = max_drift(mass);
    return error_report_thm11(traj, lim, InitialLayer{init.q, eps}, cfg.m, rate);
  }

  const double cap = parabolic_max_dt(g, rho_star0.max(), lp, cfg.law);
  const auto fine = history_times(cfg.T, cap);
  const auto all = merge_times(ts, fine);
  LimitBundle full = solve_porous_medium(rho_star0, all, lp, cfg.law);
  std::vector<double> mass;
  for (const auto& r : full.rho) mass.push_back(r.mean());
  diag.limit_mass_drift = max_drift(mass);
  const auto is = locate_times(all, ts);
  const auto ifine = locate_times(all, fine);
  const DensityHistory history(fine, pick(full.rho, ifine));
  LimitBundle lim{ts, pick(full.rho, is), pick(full.q, is), full.steps};
  full = {};
  const CorrectorBundle corr =
      solve_corrector(history, corrector_density(cfg.family, g), ts, lp, cfg.law);
  return error_report_thm12(traj, lim, corr, eps, cfg.m, rate);
}

ErrorRow run_em(const ExperimentConfig& cfg, double eps, RunDiagnostics& diag) {
  const Grid g(cfg.d, cfg.n, cfg.L);
  const auto ts = sample_times(eps, cfg.T, cfg.samples);
  EMParams p;
  p.eps = eps;
  p.b_e = cfg.b_e;
  p.T = cfg.T;
  p.dt = cfg.dt;
  p.cfl = cfg.cfl;
  p.max_dt_eps2 = cfg.max_dt_eps2;
  p.scheme = cfg.scheme;
  p.layer_substeps = cfg.layer_substeps;
  p.m = cfg.m;
  const EMState init = make_em_initial(cfg.family, g, cfg.law, eps, cfg.b_e);
  const EMTrajectory traj = solve_em(init, p, cfg.law, ts);
  diag.steps = traj.diag.steps.steps;
  diag.min_dt = traj.diag.steps.min_dt;
  diag.max_dt = traj.diag.steps.max_dt;
  diag.mass_drift = max_drift(traj.diag.mass);
  diag.max_energy_ratio = max_of(traj.diag.energy) / traj.diag.initial_energy;
  diag.max_gauss_residual = max_of(traj.diag.gauss_residual);
  diag.max_div_b = max_of(traj.diag.div_b);
  diag.max_step_constraint_change = traj.diag.max_step_constraint_change;

  const ScalarField rho_star0 = limit_density(cfg.family, g);
  const LimitParams lp = limit_params(cfg);
  const InitialLayer layer{init.q, eps};
  const double rate = slowest_decay(cfg);
  auto mass_of = [](const EMLimitBundle& b) {
    std::vector<double> mass;
    for (const auto& r : b.rho) mass.push_back(r.mean());
    return max_drift(mass);
  };

  if (!cfg.em_corrector) {
    const EMLimitBundle lim = solve_drift_diffusion(rho_star0, ts, lp, cfg.law);
    diag.limit_mass_drift = mass_of(lim);
    return error_report_em(traj, lim, nullptr, layer, cfg.b_e, cfg.m, rate);
  }
  const double cap = parabolic_max_dt(g, rho_star0.max(), lp, cfg.law);
  const auto fine = history_times(cfg.T, cap);
  const auto all = merge_times(ts, fine);
  EMLimitBundle full = solve_drift_diffusion(rho_star0, all, lp, cfg.law);
  diag.limit_mass_drift = mass_of(full);
  const auto is = locate_times(all, ts);
  const DensityHistory history(fine, pick(full.rho, locate_times(all, fine)));
  EMLimitBundle lim{ts,           pick(full.rho, is), pick(full.phi, is),
                    pick(full.E, is), pick(full.q, is),   full.steps};
  full = {};
  const EMCorrectorBundle corr = solve_em_corrector(history, cfg.b_e, ts, lp, cfg.law);
  return error_report_em(traj, lim, &corr, layer, cfg.b_e, cfg.m, rate);
}

json config_json(const ExperimentConfig& cfg) {
  json j = json::object();
  std::istringstream in(serialize(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  std::string text;
  for (const auto& [k, v] : j.items()) text += k + " = " + v.get<std::string>() + "\n";
  return parse_config_text(text);
}

double parse_number(std::string_view s, int line) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": '" + std::string(s) +
                     "' is not a number");
  }
  return v;
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

bool RateBand::contains(double slope) const {
  return (!lo || slope >= *lo) && (!hi || slope <= *hi);
}

std::string scenario(const ExperimentConfig& cfg) {
  if (cfg.system == System::em) return "em";
  return cfg.family.preparation == Preparation::ill ? "ill_prepared" : "well_prepared";
}

std::vector<RateBand> rate_bands(const ExperimentConfig& cfg) {
  const std::string s = scenario(cfg);
  if (s == "ill_prepared") {
    return {{"sup_rho_Hm1", 0.85, 1.15},
            {"int_grad_rho_Hm1", 0.85, std::nullopt},
            {"int_q_layer_Hm1", 0.85, 1.15},
            {"int_rho_L2", 0.85, 1.15}};
  }
  if (s == "well_prepared") {
    std::vector<RateBand> b{{"sup_rho_exp_Hm2", 1.7, 2.3}, {"int_q_exp_Hm2", 1.7, 2.3}};
    // With rho1 = 0 the flux gap q - q* is itself second order.
    if (cfg.family.preparation == Preparation::expansion) {
      b.push_back({"int_q_Hm2", 0.85, 1.15});
    }
    return b;
  }
  return {{"sup_rho_Hm1", 0.8, std::nullopt}, {"sup_E_Hm1", 0.8, std::nullopt}};
}

ErrorRow run_single(const ExperimentConfig& cfg, double eps, RunDiagnostics* diag) {
  cfg.validate();
  RunDiagnostics local;
  RunDiagnostics& d = diag ? *diag : local;
  d.eps = eps;
  const auto t0 = Clock::now();
  ErrorRow row = cfg.system == System::euler ? run_euler(cfg, eps, d) : run_em(cfg, eps, d);
  d.wall_seconds = seconds_since(t0);
  return row;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  RunReport report;
  report.config = cfg;
  report.diagnostics.resize(cfg.eps.size());
  report.table = eps_sweep(cfg.eps, [&](double eps) {
    const auto pos = std::find(cfg.eps.begin(), cfg.eps.end(), eps) - cfg.eps.begin();
    return run_single(cfg, eps, &report.diagnostics[static_cast<std::size_t>(pos)]);
  });
  report.fits = fit_all(report.table);
  report.wall_seconds = seconds_since(t0);
  return report;
}

std::vector<NamedFit> fit_all(const ErrorTable& table) {
  std::vector<NamedFit> fits;
  for (const auto& name : table.metric_names()) {
    try {
      fits.push_back({name, fit_rate(table, name)});
    } catch (const ValidationError&) {
      // metrics that vanish on some row have no log-log slope
    }
  }
  return fits;
}

std::string csv_text(const ErrorTable& table) {
  std::string out = "eps,metric_name,value,T,tail_estimate\n";
  for (const auto& row : table.rows) {
    for (const auto& m : row.metrics) {
      out += fmt(row.eps) + "," + m.name + "," + fmt(m.value) + "," + fmt(row.T) + "," +
             fmt(m.tail_estimate) + "\n";
    }
  }
  return out;
}

void emit_csv(const RunReport& report, const std::string& path) {
  write_file(path, csv_text(report.table));
}

ErrorTable parse_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line) || line != "eps,metric_name,value,T,tail_estimate") {
    throw ParseError("line 1: unexpected CSV header");
  }
  ErrorTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 5 columns");
    }
    const double eps = parse_number(cells[0], line_no);
    if (table.rows.empty() || table.rows.back().eps != eps) {
      table.rows.push_back({eps, 0, parse_number(cells[3], line_no), {}});
    }
    table.rows.back().metrics.push_back(
        {cells[1], parse_number(cells[2], line_no), parse_number(cells[4], line_no)});
  }
  return table;
}

ErrorTable read_csv(const std::string& path) {
  try {
    return parse_csv_text(read_file(path));
  } catch (const ParseError& e) {
    e.rethrow_with(path + ": ");
  }
}

std::string json_text(const RunReport& r) {
  json j;
  j["config"] = config_json(r.config);
  j["scenario"] = scenario(r.config);
  j["rows"] = json::array();
  for (const auto& row : r.table.rows) {
    json jr{{"eps", row.eps}, {"m", row.m}, {"T", row.T}, {"metrics", json::array()}};
    for (const auto& m : row.metrics) {
      jr["metrics"].push_back(
          {{"name", m.name}, {"value", m.value}, {"tail_estimate", m.tail_estimate}});
    }
    j["rows"].push_back(jr);
  }
  j["fits"] = json::array();
  for (const auto& f : r.fits) {
    j["fits"].push_back({{"metric", f.metric},
                         {"slope", f.fit.slope},
                         {"intercept", f.fit.intercept},
                         {"residual", f.fit.residual}});
  }
  j["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics) {
    j["diagnostics"].push_back({{"eps", d.eps},
                                {"steps", d.steps},
                                {"min_dt", d.min_dt},
                                {"max_dt", d.max_dt},
                                {"mass_drift", d.mass_drift},
                                {"limit_mass_drift", d.limit_mass_drift},
                                {"max_energy_ratio", d.max_energy_ratio},
                                {"max_gauss_residual", d.max_gauss_residual},
                                {"max_div_b", d.max_div_b},
                                {"max_step_constraint_change", d.max_step_constraint_change},
                                {"guard_status", d.guard_status},
                                {"wall_seconds", d.wall_seconds}});
  }
  j["wall_seconds"] = r.wall_seconds;
  return j.dump(2) + "\n";
}

void emit_json(const RunReport& report, const std::string& path) {
  write_file(path, json_text(report));
}

RunReport parse_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON report: ") + e.what());
  }
  RunReport r;
  r.config = config_from_json(j.at("config"));
  for (const auto& jr : j.at("rows")) {
    ErrorRow row{jr.at("eps").get<double>(), jr.at("m").get<int>(), jr.at("T").get<double>(),
                 {}};
    for (const auto& m : jr.at("metrics")) {
      row.metrics.push_back({m.at("name").get<std::string>(), m.at("value").get<double>(),
                             m.at("tail_estimate").get<double>()});
    }
    r.table.rows.push_back(std::move(row));
  }
  for (const auto& f : j.at("fits")) {
    r.fits.push_back({f.at("metric").get<std::string>(),
                      {f.at("slope").get<double>(), f.at("intercept").get<double>(),
                       f.at("residual").get<double>()}});
  }
  for (const auto& d : j.at("diagnostics")) {
    RunDiagnostics x;
    x.eps = d.at("eps").get<double>();
    x.steps = d.at("steps").get<long>();
    x.min_dt = d.at("min_dt").get<double>();
    x.max_dt = d.at("max_dt").get<double>();
    x.mass_drift = d.at("mass_drift").get<double>();
    x.limit_mass_drift = d.at("limit_mass_drift").get<double>();
    x.max_energy_ratio = d.at("max_energy_ratio").get<double>();
    x.max_gauss_residual = d.at("max_gauss_residual").get<double>();
    x.max_div_b = d.at("max_div_b").get<double>();
    x.max_step_constraint_change = d.at("max_step_constraint_change").get<double>();
    x.guard_status = d.at("guard_status").get<std::string>();
    x.wall_seconds = d.at("wall_seconds").get<double>();
    r.diagnostics.push_back(std::move(x));
  }
  r.wall_seconds = j.at("wall_seconds").get<double>();
  return r;
}

void emit_plotscript(const RunReport& report, const std::string& path) {
  json data = json::object();
  for (const auto& name : report.table.metric_names()) {
    json series{{"eps", json::array()}, {"value", json::array()}};
    for (const auto& row : report.table.rows) {
      series["eps"].push_back(row.eps);
      series["value"].push_back(row.metric(name).value);
    }
    data[name] = series;
  }
  json fits = json::object();
  for (const auto& f : report.fits) {
    fits[f.metric] = {{"slope", f.fit.slope}, {"intercept", f.fit.intercept}};
  }
  const std::string png = std::filesystem::path(path).replace_extension(".png").string();
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "# Log-log error versus eps with least-squares lines.\n"
    << "import json\n"
    << "import math\n\n"
    << "import matplotlib\n"
    << "matplotlib.use(\"Agg\")\n"
    << "import matplotlib.pyplot as plt\n\n"
    << "DATA = json.loads(r'''" << data.dump() << "''')\n"
    << "FITS = json.loads(r'''" << fits.dump() << "''')\n"
    << "TITLE = " << json(scenario(report.config)).dump() << "\n"
    << "OUT = " << json(png).dump() << "\n\n"
    << "fig, ax = plt.subplots(figsize=(7, 5))\n"
    << "for name, s in DATA.items():\n"
    << "    line, = ax.loglog(s[\"eps\"], s[\"value\"], \"o\", label=name)\n"
    << "    fit = FITS.get(name)\n"
    << "    if fit:\n"
    << "        xs = [min(s[\"eps\"]), max(s[\"eps\"])]\n"
    << "        ys = [math.exp(fit[\"intercept\"]) * x ** fit[\"slope\"] for x in xs]\n"
    << "        ax.loglog(xs, ys, \"-\", color=line.get_color(),\n"
    << "                  label=\"slope %.3f\" % fit[\"slope\"])\n"
    << "ax.set_xlabel(\"eps\")\n"
    << "ax.set_ylabel(\"error\")\n"
    << "ax.set_title(TITLE)\n"
    << "ax.legend(fontsize=7)\n"
    << "fig.tight_layout()\n"
    << "fig.savefig(OUT, dpi=150)\n";
  write_file(path, s.str());
}

std::vector<CheckResult> self_check() {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, auto&& body) {
    CheckResult r{name, false, ""};
    try {
      const double err = body();
      std::ostringstream d;
      d << "value " << err;
      r.passed = true;
      r.detail = d.str();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };
  auto require = [](double value, double tol) {
    if (!(value <= tol)) {
      throw std::runtime_error("value " + fmt(value) + " above tolerance " + fmt(tol));
    }
    return value;
  };
  const double two_pi = 2.0 * std::numbers::pi;

  run("gradient of sin is cos", [&] {
    const Grid g(1, 64, two_pi);
    const auto f = ScalarField::from_function(g, [](const auto& x) { return std::sin(x[0]); });
    const auto c = ScalarField::from_function(g, [](const auto& x) { return std::cos(x[0]); });
    return require((gradient(f)[0] - c).max_abs(), 1e-10);
  });
  run("div grad equals laplacian", [&] {
    const Grid g(3, 16, two_pi);
    const auto f = ScalarField::from_function(g, [](const auto& x) {
      return std::sin(x[0] + 2 * x[1]) * std::cos(x[2]) + std::cos(3 * x[1]);
    });
    return require((divergence(gradient(f)) - laplacian(f)).max_abs(), 1e-12);
  });
  run("Maxwell rotation isometry", [&] {
    const Grid g(3, 16, two_pi);
    const auto e = electric_field(ScalarField::from_function(
        g, [](const auto& x) { return 1.0 + 0.1 * std::cos(x[0] - x[2]); }));
    const auto z = ScalarField::constant(g, 0.0);
    const auto bb = VectorField({ScalarField::from_function(
                                     g, [](const auto& x) { return std::sin(x[1] + x[2]); }),
                                 z, z + 1.0});
    const auto [e2, b2] = maxwell_rotation(e, bb, 0.37, 0.1);
    const double before = std::hypot(sobolev_norm(e, 0.0), sobolev_norm(bb, 0.0));
    const double after = std::hypot(sobolev_norm(e2, 0.0), sobolev_norm(b2, 0.0));
    return require(std::abs(after - before) / before, 1e-12);
  });
  run("Euler mass conservation", [&] {
    const Grid g(1, 64, two_pi);
    const PressureLaw law;
    InitialDataFamily f;
    const double eps = 0.1;
    const auto init = make_euler_initial(f, g, law, eps);
    RelaxParams p;
    p.eps = eps;
    const std::vector<double> ts{0.0, 0.05};
    const auto tr = solve_euler(init, p, law, ts);
    return require(max_drift(tr.diag.mass), 1e-12);
  });
  run("porous medium mass conservation", [&] {
    const Grid g(1, 64, two_pi);
    const PressureLaw law;
    const InitialDataFamily f;
    const std::vector<double> ts{0.0, 0.1};
    const auto lim = solve_porous_medium(limit_density(f, g), ts, {}, law);
    return require(std::abs(lim.rho[1].mean() - lim.rho[0].mean()), 1e-12);
  });
  run("Gauss law of EM initial data", [&] {
    const Grid g(3, 16, two_pi);
    InitialDataFamily f;
    f.modes = {1, 2};
    const auto s = make_em_initial(f, g, PressureLaw{}, 0.1, Vec3{0, 0, 1});
    return require(gauss_residual(s), 1e-12);
  });
  run("rate fit of a first-order table", [&] {
    const std::vector<double> e{0.2, 0.1, 0.05}, v{0.02, 0.01, 0.005};
    return require(std::abs(fit_rate(e, v).slope - 1.0), 1e-12);
  });
  run("config round trip", [&] {
    const auto c = default_config(System::em);
    return require(parse_config_text(serialize(c)) == c ? 0.0 : 1.0, 0.0);
  });
  return out;
}

}  // namespace relaxlab
