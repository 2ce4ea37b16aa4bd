#pragma once

#include <stdexcept>
#include <string>

namespace rayleigh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of probability zero.
class NullConditioning : public Error {
 public:
  using Error::Error;
};

/// An exhaustive operation was asked to run beyond its size cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, long requested, long cap)
      : Error(what + ": size " + std::to_string(requested) + " exceeds cap " +
              std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  long requested() const noexcept { return requested_; }
  long cap() const noexcept { return cap_; }

 private:
  long requested_;
  long cap_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rayleigh
