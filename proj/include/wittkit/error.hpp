#pragma once

#include <stdexcept>
#include <string>

namespace wittkit {

enum class ErrorKind {
  kParse,
  kInvalidArgument,
  kNotDivisible,
  kPresentationOnly,
  kSearchTooLarge,
  kCtxMismatch,
  kNotInGhostImage,
  kCongruenceFailed,
  kLengthError,
  kLevelExceeded,
  kBadBase,
  kIsoFailed,
  kVerificationFailed,
  kCocycleFailed,
};

const char* kind_name(ErrorKind kind) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying
/// a stable kind; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wittkit
