#ifndef AIJ_ERROR_HPP
#define AIJ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace aij {

/// Every failure the library signals carries one of these kinds.
enum class ErrorKind {
  zero_denominator,
  type,
  char_range,
  bad_package_name,
  duplicate_params,
  duplicate_package,
  unknown_package,
  duplicate_function,
  witness_already_set,
  witness_unset,
  sealed,
  not_initialized,
  already_initialized,
  undefined_function,
  arity,
  not_primitive,
  unbound_variable,
  parse,
  bad_dump,
  constrained_or_missing,
  raw_code_not_whitelisted,
  stobj,
  io,
  usage,
};

/// Signal name of an error kind, e.g. "unknown-package".
[[nodiscard]] constexpr std::string_view signal_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::zero_denominator: return "zero-denominator";
    case ErrorKind::type: return "type";
    case ErrorKind::char_range: return "char-range";
    case ErrorKind::bad_package_name: return "bad-package-name";
    case ErrorKind::duplicate_params: return "duplicate-params";
    case ErrorKind::duplicate_package: return "duplicate-package";
    case ErrorKind::unknown_package: return "unknown-package";
    case ErrorKind::duplicate_function: return "duplicate-function";
    case ErrorKind::witness_already_set: return "witness-already-set";
    case ErrorKind::witness_unset: return "witness-unset";
    case ErrorKind::sealed: return "sealed";
    case ErrorKind::not_initialized: return "not-initialized";
    case ErrorKind::already_initialized: return "already-initialized";
    case ErrorKind::undefined_function: return "undefined-function";
    case ErrorKind::arity: return "arity";
    case ErrorKind::not_primitive: return "not-primitive";
    case ErrorKind::unbound_variable: return "unbound-variable";
    case ErrorKind::parse: return "parse";
    case ErrorKind::bad_dump: return "bad-dump";
    case ErrorKind::constrained_or_missing: return "constrained-or-missing";
    case ErrorKind::raw_code_not_whitelisted: return "raw-code-not-whitelisted";
    case ErrorKind::stobj: return "stobj";
    case ErrorKind::io: return "io";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(signal_name(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string_view signal() const noexcept { return signal_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace aij

#endif  // AIJ_ERROR_HPP
