#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

enum class ErrorCode {
  InvalidArgument,
  IoError,
  ConfigError,
  DisconnectedGraph,
  NonpositiveMeasure,
  NegativeWeight,
  DuplicateEdge,
  ZeroFunction,
  NegativeInput,
  DegenerateFunction,
  EmptySet,
  NotDisjoint,
  KTooLarge,
  ConvergenceFailure,
  DegenerateSpectrum,
  NotAnEigenfunction,
  OneSidedFunction,
  BadResolution,
  TooLarge,
  EnumerationOverflow,
  TooLargeForExact,
  H1NotExact,
  BadKappa,
  NoEdgeLengths,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace speclab
