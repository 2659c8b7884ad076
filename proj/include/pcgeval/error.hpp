#pragma once

#include <stdexcept>
#include <string>

namespace pcgeval {

enum class ErrorCode {
  RaggedLines,
  UnknownTileCode,
  EmptyLevel,
  DomainMismatch,
  BlockedEndpoint,
  NotSolved,
  EmptyInput,
  ReprDomainMismatch,
  UnsolvedLevel,
  InvalidDenominator,
  Unsolvable,
  HeightOverflow,
  BadDimensions,
  UnsolvableBase,
  DegenerateInput,
  InsufficientSolvable,
  InvalidArgument,
  ConfigError,
  IoError,
};

const char* error_code_name(ErrorCode code);

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pcgeval
