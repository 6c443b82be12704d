#pragma once

#include <stdexcept>
#include <string>

namespace superconc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPSD : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct EmptyVector : Error { using Error::Error; };
struct DegenerateField : Error { using Error::Error; };
struct BackendInfeasible : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct TooSmall : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct InvalidRange : Error { using Error::Error; };
struct NonpositiveX : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DivideByZero : Error { using Error::Error; };
struct KernelOrderViolated : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Config parsing failure with the offending location attached.
struct ParseError : Error {
  ParseError(int line_, std::string key_, std::string reason_)
      : Error("parse error at line " + std::to_string(line_) + ", key '" + key_ +
              "': " + reason_),
        line(line_), key(std::move(key_)), reason(std::move(reason_)) {}
  int line;
  std::string key;
  std::string reason;
};

}  // namespace superconc
