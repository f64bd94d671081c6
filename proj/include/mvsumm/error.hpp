#pragma once

#include <stdexcept>
#include <string>

namespace mvsumm {

// Bad caller input: violated preconditions, malformed configuration.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that parsed but cannot be used (shape mismatches, non-finite
// values, zero-norm descriptors, missing files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed (factorization breakdown, eigensolver failure,
// too few nonzero eigenvalues).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mvsumm
