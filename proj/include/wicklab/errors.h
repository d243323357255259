#pragma once

#include <stdexcept>
#include <string>

namespace wicklab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: mismatched truncation parameters, malformed symbols,
// invalid configuration values.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A dense path would exceed the basis-size budget (see max_basis_size()).
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Refinement doubling hit its cap without meeting the tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// A truncated construction was requested outside its accuracy radius.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace wicklab
