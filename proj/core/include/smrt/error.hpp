#pragma once

#include <stdexcept>
#include <string>

namespace smrt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Raised when a Bessel zero cannot be bracketed below the search bound.
class ZeroSearchError : public Error {
 public:
  ZeroSearchError(const std::string& what, double lo, double hi)
      : Error(what), lo_(lo), hi_(hi) {}
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse, incompatible, or otherwise unusable for the requested operation.
class GridError : public Error {
 public:
  using Error::Error;
};

class CflError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace smrt
