#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fbpir {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrimePower : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class ZeroColumn : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IncompatibleDegrees : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class SumNonzero : public Error {
 public:
  using Error::Error;
};

class WrongMatrix : public Error {
 public:
  using Error::Error;
};

class WrongListSize : public Error {
 public:
  using Error::Error;
};

class SeedIntegrityError : public Error {
 public:
  using Error::Error;
};

class CacheMismatch : public Error {
 public:
  using Error::Error;
};

/// A search gave up. [lower, upper] is the interval proven so far.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::int64_t lower, std::int64_t upper)
      : Error(what), lower_(lower), upper_(upper) {}

  std::int64_t lower() const { return lower_; }
  std::int64_t upper() const { return upper_; }

 private:
  std::int64_t lower_;
  std::int64_t upper_;
};

}  // namespace fbpir
