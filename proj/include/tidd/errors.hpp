#pragma once

#include <stdexcept>
#include <string>

namespace tidd {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TIDD_DEFINE_ERROR(Name)            \
  class Name : public Error {              \
   public:                                 \
    explicit Name(const std::string& what) \
        : Error(#Name ": " + what) {}      \
  }

TIDD_DEFINE_ERROR(CanonicalOrderViolation);
TIDD_DEFINE_ERROR(ArityMismatch);
TIDD_DEFINE_ERROR(AssignmentLengthMismatch);
TIDD_DEFINE_ERROR(IndexOutOfRange);
TIDD_DEFINE_ERROR(TruthTableLengthMismatch);
TIDD_DEFINE_ERROR(NotPowerOfTwo);
TIDD_DEFINE_ERROR(LevelMismatch);
TIDD_DEFINE_ERROR(ValueDomainError);
TIDD_DEFINE_ERROR(ShapeMismatch);
TIDD_DEFINE_ERROR(NegativeWeight);
TIDD_DEFINE_ERROR(ZeroDistribution);
TIDD_DEFINE_ERROR(OracleScaleLimit);
TIDD_DEFINE_ERROR(GateSpecError);
TIDD_DEFINE_ERROR(ParseError);

#undef TIDD_DEFINE_ERROR

}  // namespace tidd
