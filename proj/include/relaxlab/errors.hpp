#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace relaxlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Throws a copy of the same dynamic type with `prefix` prepended.
  [[noreturn]] void rethrow_with(const std::string& prefix) const {
    throw_with(prefix);
    std::abort();
  }

 protected:
  virtual void throw_with(const std::string& prefix) const { throw Error(prefix + what()); }
};

#define RELAXLAB_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                            \
   public:                                                               \
    using Error::Error;                                                  \
                                                                         \
   protected:                                                            \
    void throw_with(const std::string& prefix) const override {          \
      throw Name(prefix + what());                                       \
    }                                                                    \
  }

RELAXLAB_DEFINE_ERROR(DimensionError);
RELAXLAB_DEFINE_ERROR(GridMismatch);
RELAXLAB_DEFINE_ERROR(MeanNotZero);
RELAXLAB_DEFINE_ERROR(MeanNotOne);
RELAXLAB_DEFINE_ERROR(VacuumError);
RELAXLAB_DEFINE_ERROR(CFLViolation);
RELAXLAB_DEFINE_ERROR(BlowupGuard);
RELAXLAB_DEFINE_ERROR(ConstraintDrift);
RELAXLAB_DEFINE_ERROR(SamplingTooCoarse);
RELAXLAB_DEFINE_ERROR(AlignmentError);
RELAXLAB_DEFINE_ERROR(NotWellPrepared);
RELAXLAB_DEFINE_ERROR(NegativeTime);
RELAXLAB_DEFINE_ERROR(InsufficientPoints);
RELAXLAB_DEFINE_ERROR(ParseError);
RELAXLAB_DEFINE_ERROR(ValidationError);
RELAXLAB_DEFINE_ERROR(IoError);

#undef RELAXLAB_DEFINE_ERROR

}  // namespace relaxlab
