#pragma once

#include <stdexcept>
#include <string>

namespace plr {

enum class ErrorKind {
  IndexOutOfRange,
  LatinViolation,
  DimensionMismatch,
  InvalidParastrophe,
  WeightMismatch,
  NotSquare,
  LengthMismatch,
  UnknownStrategy,
  RowMismatch,
  InfeasibleSystem,
  UnsupportedConstraint,
  BackendUnavailable,
  MissingRho,
  SizeOutOfRange,
  NonIntegerResult,
  LimitExceeded,
  NotSeminetSource,
  RankOutOfRange,
  ParseError,
  InvalidArgument,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace plr
