#pragma once

// Shared time-marching driver: advances a state through a list of sample
// times, splitting every interval into equal substeps no longer than the
// step cap evaluated at the start of each substep.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "relaxlab/errors.hpp"

namespace relaxlab {

struct StepStats {
  long steps = 0;
  double min_dt = std::numeric_limits<double>::infinity();
  double max_dt = 0.0;
};

/// Throws NegativeTime for t < 0 and ValidationError when not sorted.
void validate_sample_times(std::span<const double> times);

inline std::string time_context(double t) {
  return "at t=" + std::to_string(t) + ": ";
}

/// step(state, t, h) -> next state; max_dt(state, t) -> cap;
/// record(t, state) is called once per sample time.
template <class State, class Step, class MaxDt, class Record>
void march(State state, std::span<const double> samples, Step&& step,
           MaxDt&& max_dt, Record&& record, StepStats& stats) {
  validate_sample_times(samples);
  double t = 0.0;
  for (const double ts : samples) {
    while (t < ts) {
      const double rem = ts - t;
      const double cap = max_dt(state, t);
      if (!(cap > 0.0) || !std::isfinite(cap)) {
        throw CFLViolation(time_context(t) + "no admissible time step");
      }
      // rem carries rounding of order ulp(ts); do not split an interval for it
      const double slack =
          1e-12 * cap + 16.0 * std::numeric_limits<double>::epsilon() * std::abs(ts);
      const double n = std::max(1.0, std::ceil((rem - slack) / cap));
      const bool last = n <= 1.0;
      const double h = last ? rem : rem / n;
      try {
        state = step(state, t, h);
      } catch (const Error& e) {
        e.rethrow_with(time_context(t));
      }
      t = last ? ts : t + h;
      ++stats.steps;
      stats.min_dt = std::min(stats.min_dt, h);
      stats.max_dt = std::max(stats.max_dt, h);
    }
    record(ts, state);
  }
}

}  // namespace relaxlab
