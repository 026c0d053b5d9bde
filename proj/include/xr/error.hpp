// Error codes shared across the library. Every throwing operation raises
// xr::Error with one of these codes; messages carry the offending values.
#pragma once

#include <stdexcept>
#include <string>

namespace xr {

enum class ErrorCode {
  NotSymmetric,
  NotSpd,
  DependentColumns,
  DimensionMismatch,
  NotDecreasing,
  BadMultiplicities,
  SingularGram,
  SignatureMismatch,
  NotUnimodular,
  NotOpposite,
  TypeMismatch,
  Inadmissible,
  NotRegular,
  NotGeneric,
  BasepointNotInFlat,
  CoincidentPoints,
  Degenerate,
  SameEnd,
  NotMoebius,
  NotExtendable,
  ArityMismatch,
  Ambiguous,
  Inconsistent,
  CannotSeparate,
  CalibrationFailed,
  BadInput,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace xr
