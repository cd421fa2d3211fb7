#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bohreq {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  EmptyExponentSet,
  DuplicateFrequency,
  NotABasis,
  ToleranceInExactMode,
  DimensionMismatch,
  OutsideStrip,
  BadDiscretization,
  ExponentSetMismatch,
  MixedCoefficientModes,
  ResidueOutOfRange,
  InconsistentResidues,
  BudgetExceeded,
  EmptyCloud,
  NoCertificate,
  NotEquivalent,
  OracleDisagreement,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view kind_name() const { return error_kind_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace bohreq
