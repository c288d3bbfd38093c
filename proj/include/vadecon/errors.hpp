#pragma once

#include <stdexcept>

namespace vadecon {

// Error taxonomy mirrored by the CLI exit codes:
// validation 2, data 3, numerical 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration, bad file formats, violated call contracts.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Missing, empty, or insufficient input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Singular designs, degenerate scales, and other numerical failures.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace vadecon
