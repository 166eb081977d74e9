#pragma once

#include <stdexcept>
#include <string>

namespace ifpn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownName : public Error {
 public:
  explicit UnknownName(const std::string& name) : Error("unknown name: " + name) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Raised when an operator is applied outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No t <= bracket_cap satisfies the α-cut predicate.
class BracketExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ScenarioError : public Error {
 public:
  using Error::Error;
};

}  // namespace ifpn
