#include "relaxlab/stepping.hpp"

namespace relaxlab {

void validate_sample_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw NegativeTime("sample times must be non-negative");
    if (i > 0 && times[i] < times[i - 1]) {
      throw ValidationError("sample times must be sorted");
    }
  }
}

}  // namespace relaxlab
