#pragma once

// Experiment configuration. The file format is one `key = value` pair per
// line; `#` starts a comment. Lists are comma separated. Numbers may carry a
// trailing `pi` factor (`2pi`, `0.5pi`, `pi`).
//
// Keys and defaults (euler / em):
//   system              euler | em                      euler
//   d                   1 | 2 | 3                        1 / 3
//   n                   grid points per axis             256 / 32
//   L                   box length                       2pi
//   pressure_a, pressure_gamma                           1, 2
//   m                   Sobolev index                    3
//   eps                 ladder, strictly decreasing      0.2,0.1,0.05,0.025 / 0.2,0.1,0.05
//   T                   horizon                          2 / 1
//   dt                  fixed step cap (0 = CFL policy)  0
//   cfl                                                  0.25
//   scheme              imex1 | ars222                   ars222
//   layer_substeps      steps per eps^2 inside the layer 64 / 16
//   max_dt_eps2         EM step cap in units of eps^2    0.2
//   layer_density, layer_count, samples                  8, 64, 50 / 4, 16, 50
//   family              cosine | bump | random           cosine
//   amplitude                                            0.05
//   modes               mode index per axis              1 / 1,2
//   preparation         ill | well | expansion           ill
//   velocity_amplitude, velocity_mode                    0.05, 1
//   corrector_amplitude, corrector_mode                  0.05, 2
//   b_e                 background magnetic field        0,0,1
//   em_corrector        true | false                     true
//   seed                                                 1
//   out_dir, prefix                                      results, relaxlab

#include <string>
#include <string_view>
#include <vector>

#include "relaxlab/euler_maxwell.hpp"
#include "relaxlab/harness.hpp"
#include "relaxlab/imex.hpp"
#include "relaxlab/initial_data.hpp"
#include "relaxlab/pressure.hpp"

namespace relaxlab {

enum class System { euler, em };

std::string to_string(System s);
System parse_system(std::string_view s);

struct ExperimentConfig {
  System system = System::euler;
  int d = 1;
  int n = 256;
  double L = 0.0;
  PressureLaw law;
  int m = 3;
  std::vector<double> eps;
  double T = 2.0;
  double dt = 0.0;
  double cfl = 0.25;
  Scheme scheme = Scheme::ars222;
  double layer_substeps = 64.0;
  double max_dt_eps2 = 0.2;
  SampleSchedule samples;
  InitialDataFamily family;
  Vec3 b_e{0.0, 0.0, 1.0};
  bool em_corrector = true;
  std::string out_dir = "results";
  std::string prefix = "relaxlab";

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
};

/// Defaults of a system before any key is applied.
ExperimentConfig default_config(System system);

/// Throws ParseError with line and key, ValidationError, or IoError.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(std::string_view text);

/// Every key, full precision; parse_config_text(serialize(c)) == c.
std::string serialize(const ExperimentConfig& cfg);

}  // namespace relaxlab
