#pragma once

#include <stdexcept>
#include <string>

namespace primebound {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Index or value beyond what a PrimeTable covers; rebuild with a larger limit.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Requested work exceeds the configured memory budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Root search could not find a sign change below its cap.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// An input contradicts an assumption the computation relies on.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace primebound
