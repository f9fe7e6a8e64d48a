#pragma once

#include <stdexcept>
#include <string>

namespace susy {

// Every failure raised by the library derives from Error so callers
// (the CLI in particular) can map them to exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUSY_DEFINE_ERROR(Name)              \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

SUSY_DEFINE_ERROR(BranchError);
SUSY_DEFINE_ERROR(OverflowError);
SUSY_DEFINE_ERROR(DomainError);
SUSY_DEFINE_ERROR(DegenerateError);
SUSY_DEFINE_ERROR(ConvergenceError);
SUSY_DEFINE_ERROR(NodeError);
SUSY_DEFINE_ERROR(CaseError);
SUSY_DEFINE_ERROR(ThresholdError);
SUSY_DEFINE_ERROR(GridMismatch);
SUSY_DEFINE_ERROR(DivisionError);
SUSY_DEFINE_ERROR(TailError);
SUSY_DEFINE_ERROR(AsymptoticError);
SUSY_DEFINE_ERROR(OscillationError);
SUSY_DEFINE_ERROR(ConfigError);

#undef SUSY_DEFINE_ERROR

}  // namespace susy
