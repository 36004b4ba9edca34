#pragma once

#include <stdexcept>
#include <string>

namespace siglink {

/// Base class for all recoverable siglink errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input is not parseable TimeML/XML markup.
class MalformedXmlError : public Error {
 public:
  using Error::Error;
};

/// An annotation references an id that is not defined in the document.
class DanglingReferenceError : public Error {
 public:
  using Error::Error;
};

/// The same annotation id is defined twice in one document.
class DuplicateIdError : public Error {
 public:
  using Error::Error;
};

/// A path could not be read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs at least one instance got none.
class EmptyDataError : public Error {
 public:
  using Error::Error;
};

/// The dataset is too small for the requested split.
class TooFewInstancesError : public Error {
 public:
  using Error::Error;
};

/// Division by zero in a closed-form computation (e.g. bound with s = 0).
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

}  // namespace siglink
