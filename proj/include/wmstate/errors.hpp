#pragma once

#include <stdexcept>
#include <string>

namespace wmstate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric guard failures. The CLI maps these to exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Cutoff too small for the requested state or operator.
class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A ratio is undefined (zero denominator), e.g. the SNR ratio at g = 0.
class DegenerateError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Pre- and post-selected states are orthogonal (alpha * epsilon == 0).
class OrthogonalPostselectionError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Bad arguments. The CLI maps these to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ModeMismatchError : public UsageError {
 public:
  using UsageError::UsageError;
};

class DimensionMismatchError : public UsageError {
 public:
  using UsageError::UsageError;
};

class IndexError : public UsageError {
 public:
  using UsageError::UsageError;
};

class RangeError : public UsageError {
 public:
  using UsageError::UsageError;
};

class UnknownFigureError : public UsageError {
 public:
  using UsageError::UsageError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wmstate
