#pragma once

#include <stdexcept>
#include <string>

namespace levelpers {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad JSON, unknown vertex ids, non-nested filtrations.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A chain complex or matrix violating a structural precondition
/// (nonzero boundary composition, bad filtration order, dimension mismatch).
class MalformedComplex : public Error {
 public:
  using Error::Error;
};

/// Persistence numbers that no tame map can realize (a conversion produced
/// a negative count).
class UnrealizableNumbers : public Error {
 public:
  using Error::Error;
};

}  // namespace levelpers
