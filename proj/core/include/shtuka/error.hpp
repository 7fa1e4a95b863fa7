#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shtuka {

enum class ErrorKind {
  NonUnit,
  Overflow,
  MixedRings,
  LengthUnderflow,
  NotInIdeal,
  UnsupportedBase,
  PrecisionExhausted,
  NotInvertible,
  BudgetExceeded,
  ParameterMismatch,
  TypeMismatch,
  NotABundle,
  NotDominant,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace shtuka
