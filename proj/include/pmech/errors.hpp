#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmech {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Numeric preconditions: grid containment, h > 0, quadrature tolerance.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Degree growth past the configured cap in the bracket ODE.
class ClosureError : public Error {
 public:
  using Error::Error;
};

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace pmech
