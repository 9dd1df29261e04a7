#pragma once

#include <stdexcept>
#include <string>

namespace monoball {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A group table or generator list failed structural validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An enumeration guard (subgroup cap, span guard, order cap) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Caller supplied inconsistent arguments (mismatched groups, bad radius, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An exact inclusion that the construction guarantees did not hold.
class FalsifiedError : public Error {
 public:
  using Error::Error;
};

}  // namespace monoball
