#include "relaxlab/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "relaxlab/errors.hpp"

namespace relaxlab {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto c = s.find(',');
    out.push_back(trim(s.substr(0, c)));
    if (c == std::string_view::npos) break;
    s.remove_prefix(c + 1);
  }
  return out;
}

struct Entry {
  int line;
  std::string key;
  std::string value;
};

[[noreturn]] void fail(const Entry& e, const std::string& why) {
  throw ParseError("line " + std::to_string(e.line) + ", key '" + e.key + "': " + why);
}

double to_double(const Entry& e, std::string_view s) {
  double factor = 1.0;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) return factor;
  }
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    fail(e, "'" + std::string(s) + "' is not a number");
  }
  return v * factor;
}

long to_long(const Entry& e, std::string_view s) {
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    fail(e, "'" + std::string(s) + "' is not an integer");
  }
  return v;
}

int to_int(const Entry& e, std::string_view s) {
  const long v = to_long(e, s);
  if (v < -1000000000L || v > 1000000000L) fail(e, "integer out of range");
  return static_cast<int>(v);
}

bool to_bool(const Entry& e, std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(e, "'" + std::string(s) + "' is not a boolean");
}

template <class F>
auto enum_value(const Entry& e, F&& parse) {
  try {
    return parse(e.value);
  } catch (const Error& err) {
    fail(e, err.what());
  }
}

using Setter = std::function<void(ExperimentConfig&, const Entry&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"system", [](auto& c, auto& e) { c.system = enum_value(e, parse_system); }},
      {"d", [](auto& c, auto& e) { c.d = to_int(e, e.value); }},
      {"n", [](auto& c, auto& e) { c.n = to_int(e, e.value); }},
      {"L", [](auto& c, auto& e) { c.L = to_double(e, e.value); }},
      {"pressure_a", [](auto& c, auto& e) { c.law.a = to_double(e, e.value); }},
      {"pressure_gamma", [](auto& c, auto& e) { c.law.gamma = to_double(e, e.value); }},
      {"m", [](auto& c, auto& e) { c.m = to_int(e, e.value); }},
      {"eps",
       [](auto& c, auto& e) {
         c.eps.clear();
         if (trim(e.value).empty()) return;
         for (auto v : split_list(e.value)) c.eps.push_back(to_double(e, v));
       }},
      {"T", [](auto& c, auto& e) { c.T = to_double(e, e.value); }},
      {"dt", [](auto& c, auto& e) { c.dt = to_double(e, e.value); }},
      {"cfl", [](auto& c, auto& e) { c.cfl = to_double(e, e.value); }},
      {"scheme", [](auto& c, auto& e) { c.scheme = enum_value(e, parse_scheme); }},
      {"layer_substeps", [](auto& c, auto& e) { c.layer_substeps = to_double(e, e.value); }},
      {"max_dt_eps2", [](auto& c, auto& e) { c.max_dt_eps2 = to_double(e, e.value); }},
      {"layer_density",
       [](auto& c, auto& e) { c.samples.layer_density = to_double(e, e.value); }},
      {"layer_count", [](auto& c, auto& e) { c.samples.layer_count = to_int(e, e.value); }},
      {"samples", [](auto& c, auto& e) { c.samples.uniform_count = to_int(e, e.value); }},
      {"family",
       [](auto& c, auto& e) { c.family.family = enum_value(e, parse_density_family); }},
      {"amplitude", [](auto& c, auto& e) { c.family.amplitude = to_double(e, e.value); }},
      {"modes",
       [](auto& c, auto& e) {
         c.family.modes.clear();
         for (auto v : split_list(e.value)) c.family.modes.push_back(to_int(e, v));
       }},
      {"preparation",
       [](auto& c, auto& e) { c.family.preparation = enum_value(e, parse_preparation); }},
      {"velocity_amplitude",
       [](auto& c, auto& e) { c.family.velocity_amplitude = to_double(e, e.value); }},
      {"velocity_mode",
       [](auto& c, auto& e) { c.family.velocity_mode = to_int(e, e.value); }},
      {"corrector_amplitude",
       [](auto& c, auto& e) { c.family.corrector_amplitude = to_double(e, e.value); }},
      {"corrector_mode",
       [](auto& c, auto& e) { c.family.corrector_mode = to_int(e, e.value); }},
      {"b_e",
       [](auto& c, auto& e) {
         const auto parts = split_list(e.value);
         if (parts.size() != 3) fail(e, "expected 3 components");
         for (int i = 0; i < 3; ++i) c.b_e[i] = to_double(e, parts[i]);
       }},
      {"em_corrector", [](auto& c, auto& e) { c.em_corrector = to_bool(e, e.value); }},
      {"seed",
       [](auto& c, auto& e) {
         const long v = to_long(e, e.value);
         if (v < 0) fail(e, "seed must be non-negative");
         c.family.seed = static_cast<std::uint64_t>(v);
       }},
      {"out_dir", [](auto& c, auto& e) { c.out_dir = e.value; }},
      {"prefix", [](auto& c, auto& e) { c.prefix = e.value; }},
  };
  return table;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& f) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += f(v[i]);
  }
  return out;
}

}  // namespace

std::string to_string(System s) { return s == System::euler ? "euler" : "em"; }

System parse_system(std::string_view s) {
  if (s == "euler") return System::euler;
  if (s == "em") return System::em;
  throw ValidationError("unknown system '" + std::string(s) + "' (euler | em)");
}

ExperimentConfig default_config(System system) {
  ExperimentConfig c;
  c.system = system;
  c.L = 2.0 * std::numbers::pi;
  if (system == System::euler) {
    c.d = 1;
    c.n = 256;
    c.eps = {0.2, 0.1, 0.05, 0.025};
    c.T = 2.0;
    c.layer_substeps = 64.0;
    c.samples = {8.0, 64, 50};
  } else {
    c.d = 3;
    c.n = 32;
    c.eps = {0.2, 0.1, 0.05};
    c.T = 1.0;
    c.layer_substeps = 16.0;
    c.samples = {4.0, 16, 50};
    c.family.modes = {1, 2};
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (system == System::em && d != 3) throw ValidationError("em requires d=3");
  if (d < 1 || d > 3) throw ValidationError("d must be 1, 2 or 3");
  if (m < d / 2 + 2) {
    throw ValidationError("m=" + std::to_string(m) + " is below [d/2]+2 = " +
                          std::to_string(d / 2 + 2));
  }
  if (n < 8 || n % 2 != 0) throw ValidationError("n must be even and at least 8");
  if (!(L > 0.0)) throw ValidationError("L must be positive");
  if (!(law.a > 0.0) || !(law.gamma > 1.0)) {
    throw ValidationError("pressure needs a > 0 and gamma > 1");
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] <= 1.0)) throw ValidationError("eps values must lie in (0, 1]");
    if (i > 0 && !(eps[i] < eps[i - 1])) {
      throw ValidationError("eps ladder must be strictly decreasing");
    }
  }
  if (!(T > 0.0)) throw ValidationError("T must be positive");
  if (dt < 0.0 || !(cfl > 0.0) || !(max_dt_eps2 > 0.0) || layer_substeps < 0.0) {
    throw ValidationError("step policy values must be positive");
  }
  if (!(family.amplitude > 0.0)) throw ValidationError("amplitude must be positive");
  if (family.modes.empty()) throw ValidationError("modes must not be empty");
  if (system == System::em && family.preparation == Preparation::expansion) {
    throw ValidationError("em supports ill and well preparation only");
  }
  if (samples.layer_count < 1 || samples.uniform_count < 1 ||
      !(samples.layer_density > 0.0)) {
    throw ValidationError("sample schedule values must be positive");
  }
  if (out_dir.empty() || prefix.empty()) throw ValidationError("empty output path");
}

ExperimentConfig parse_config_text(std::string_view text) {
  std::vector<Entry> entries;
  std::set<std::string> seen;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    }
    Entry e{line_no, std::string(trim(line.substr(0, eq))),
            std::string(trim(line.substr(eq + 1)))};
    if (!setters().count(e.key)) fail(e, "unknown key");
    if (!seen.insert(e.key).second) fail(e, "duplicate key");
    entries.push_back(std::move(e));
  }

  System system = System::euler;
  for (const auto& e : entries) {
    if (e.key == "system") system = enum_value(e, parse_system);
  }
  ExperimentConfig cfg = default_config(system);
  for (const auto& e : entries) setters().at(e.key)(cfg, e);
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << f.rdbuf();
  try {
    return parse_config_text(text.str());
  } catch (const Error& e) {
    e.rethrow_with(path + ": ");
  }
}

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream o;
  const auto num = [](double v) { return fmt(v); };
  const auto integer = [](int v) { return std::to_string(v); };
  o << "system = " << to_string(c.system) << "\n"
    << "d = " << c.d << "\n"
    << "n = " << c.n << "\n"
    << "L = " << fmt(c.L) << "\n"
    << "pressure_a = " << fmt(c.law.a) << "\n"
    << "pressure_gamma = " << fmt(c.law.gamma) << "\n"
    << "m = " << c.m << "\n"
    << "eps = " << join(c.eps, num) << "\n"
    << "T = " << fmt(c.T) << "\n"
    << "dt = " << fmt(c.dt) << "\n"
    << "cfl = " << fmt(c.cfl) << "\n"
    << "scheme = " << to_string(c.scheme) << "\n"
    << "layer_substeps = " << fmt(c.layer_substeps) << "\n"
    << "max_dt_eps2 = " << fmt(c.max_dt_eps2) << "\n"
    << "layer_density = " << fmt(c.samples.layer_density) << "\n"
    << "layer_count = " << c.samples.layer_count << "\n"
    << "samples = " << c.samples.uniform_count << "\n"
    << "family = " << to_string(c.family.family) << "\n"
    << "amplitude = " << fmt(c.family.amplitude) << "\n"
    << "modes = " << join(c.family.modes, integer) << "\n"
    << "preparation = " << to_string(c.family.preparation) << "\n"
    << "velocity_amplitude = " << fmt(c.family.velocity_amplitude) << "\n"
    << "velocity_mode = " << c.family.velocity_mode << "\n"
    << "corrector_amplitude = " << fmt(c.family.corrector_amplitude) << "\n"
    << "corrector_mode = " << c.family.corrector_mode << "\n"
    << "b_e = " << fmt(c.b_e[0]) << "," << fmt(c.b_e[1]) << "," << fmt(c.b_e[2]) << "\n"
    << "em_corrector = " << (c.em_corrector ? "true" : "false") << "\n"
    << "seed = " << c.family.seed << "\n"
    << "out_dir = " << c.out_dir << "\n"
    << "prefix = " << c.prefix << "\n";
  return o.str();
}

}  // namespace relaxlab
