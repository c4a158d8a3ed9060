#pragma once

#include <stdexcept>
#include <string>

namespace latticegreen {

// Every failure raised by the library derives from Error; name() is the
// stable identifier printed by the CLI on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept = 0;
  // Validation errors map to CLI exit status 2, numerical ones to 3.
  virtual bool is_validation() const noexcept { return false; }
};

#define LATTICEGREEN_DEFINE_ERROR(Type, Validation)                 \
  class Type : public Error {                                      \
   public:                                                         \
    using Error::Error;                                            \
    const char* name() const noexcept override { return #Type; }   \
    bool is_validation() const noexcept override { return Validation; } \
  };

LATTICEGREEN_DEFINE_ERROR(DomainError, true)
LATTICEGREEN_DEFINE_ERROR(NonConvergence, false)
LATTICEGREEN_DEFINE_ERROR(ResonantParameter, false)
LATTICEGREEN_DEFINE_ERROR(PoleError, false)
LATTICEGREEN_DEFINE_ERROR(OverflowError, false)
LATTICEGREEN_DEFINE_ERROR(RootCountMismatch, false)
LATTICEGREEN_DEFINE_ERROR(ConvergenceError, false)
LATTICEGREEN_DEFINE_ERROR(DegenerateAmplitude, false)

#undef LATTICEGREEN_DEFINE_ERROR

}  // namespace latticegreen
