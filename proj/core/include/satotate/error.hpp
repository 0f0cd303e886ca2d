#pragma once

#include <stdexcept>
#include <string>

namespace satotate {

enum class ErrorKind {
  InvalidArgument,
  BadReduction,
  RamifiedOrDegenerate,
  NotWeil,
  DivergenceGuard,
  InvalidCmType,
  Unsupported,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. `kind()` lets callers (the CLI in
/// particular) tell input-validation failures from computation failures.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by bad caller input rather than a failed computation.
  bool is_validation() const noexcept {
    return kind_ != ErrorKind::DivergenceGuard && kind_ != ErrorKind::Internal;
  }

 private:
  ErrorKind kind_;
};

}  // namespace satotate
