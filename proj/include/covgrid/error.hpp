#pragma once

#include <stdexcept>
#include <string>

namespace covgrid {

// Base for every error raised by the library. The CLI maps subclasses onto
// exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected on semantic grounds (bad values, bad geometry).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DegeneratePolygon : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonPositiveRadius : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonPositiveSpeed : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class SizeLimitExceeded : public Error {
 public:
  SizeLimitExceeded(std::size_t cells, std::size_t cap)
      : Error("instance has " + std::to_string(cells) +
              " cells, exact-solve cap is " + std::to_string(cap)),
        cells_(cells),
        cap_(cap) {}

  std::size_t cells() const { return cells_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cells_;
  std::size_t cap_;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

// Malformed input text; the message names the line or field.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace covgrid
