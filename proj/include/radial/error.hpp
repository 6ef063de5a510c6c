#pragma once

#include <stdexcept>
#include <string>

namespace radial {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad network, schema, parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

// Structural violation: cycle where a forest is required, overlap, not a tree.
class StructureError : public Error {
 public:
  using Error::Error;
};

// A capacity or balance requirement cannot be met.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace radial
