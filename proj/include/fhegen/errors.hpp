// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_ERRORS_HPP
#define FHEGEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fhegen {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

class MismatchedRing : public Error {
 public:
  using Error::Error;
};

class ExponentOutOfRange : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class DepthExceeded : public Error {
 public:
  using Error::Error;
};

class RangeViolation : public Error {
 public:
  using Error::Error;
};

class WidthMismatch : public Error {
 public:
  using Error::Error;
};

class ProfileMismatch : public Error {
 public:
  using Error::Error;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class UnsupportedMethod : public Error {
 public:
  using Error::Error;
};

class ScenarioMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownFormat : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fhegen

#endif  // FHEGEN_ERRORS_HPP
