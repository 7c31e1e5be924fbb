#ifndef SPONGE_ERRORS_HPP_
#define SPONGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sponge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised when an operation that requires a valid spec receives an invalid one.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InvalidRatio : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class InvalidScale : public Error {
 public:
  using Error::Error;
};

class WordTooShort : public Error {
 public:
  using Error::Error;
};

class InsufficientLength : public Error {
 public:
  using Error::Error;
};

class RTooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NoTwistAvailable : public Error {
 public:
  using Error::Error;
};

}  // namespace sponge

#endif  // SPONGE_ERRORS_HPP_
