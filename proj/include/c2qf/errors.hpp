#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace c2qf {

// Stable error codes. The CLI reports these by name, so never renumber or
// rename an existing entry.
enum class ErrorCode {
  DivisionByZero,
  PrecisionExhausted,
  MixedFields,
  UnsupportedField,
  ZeroValuation,
  NegativeValuationResidue,
  ZeroPolynomial,
  DimensionMismatch,
  ZeroScale,
  BudgetExceeded,
  Unsupported,
  UnsupportedBase,
  PreconditionViolated,
  MalformedCertificate,
  CertificateInvalid,
  SyntaxError,
  UnknownVariable,
  WrongField,
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with the byte offset into the input and a description of
// what the parser expected there.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, std::string expected,
             const std::string& message)
      : Error(code, message), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace c2qf
