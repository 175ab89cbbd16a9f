#pragma once

#include <stdexcept>
#include <string>

namespace coevo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric input is not finite.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configuration document is malformed; `key()` names the offending key
/// (empty when the document itself is unreadable).
class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what)
      : Error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// A state or argument lies outside the domain of the model.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A property proved analytically failed to hold numerically.
class InternalAssumptionError : public Error {
 public:
  using Error::Error;
};

/// An iteration budget was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace coevo
