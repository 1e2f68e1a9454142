#pragma once

#include <stdexcept>
#include <string>

namespace orbitour {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Inputs at a singularity of the element set or dynamics (w <= 0, i = pi with I = +1, ...).
class SingularState : public Error {
 public:
  using Error::Error;
};

class InsufficientFuel : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitour
