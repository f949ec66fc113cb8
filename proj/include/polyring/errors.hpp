#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyring {

// Base class for failures caused by bad input or unusable configuration.
// The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A property the library is supposed to guarantee failed to hold. Reaching
// this means a bug (or a falsified lemma), not a user mistake; the CLI maps
// it to exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyring
