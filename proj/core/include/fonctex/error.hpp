#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fonctex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration, unknown names, bad command-line input.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Incompatible operands: dimension, ring, field or category mismatch.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A size cap would be exceeded. Carries the required count.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, uint64_t required, uint64_t cap)
      : Error(what + ": requires " + std::to_string(required) + ", cap " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}
  uint64_t required() const { return required_; }
  uint64_t cap() const { return cap_; }

 private:
  uint64_t required_;
  uint64_t cap_;
};

// An internal consistency check failed (d^2 != 0, non-functorial data, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fonctex
