#pragma once

#include <stdexcept>
#include <string>

namespace twisted {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (negative order, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation called with a beam family it does not support.
class FamilyError : public Error {
 public:
  using Error::Error;
};

// Radial grid too short or too coarse for the state it has to carry.
class GridCoverageError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Lambda/k too large for the paraxial expansion to be meaningful.
class ParaxialityError : public Error {
 public:
  using Error::Error;
};

// Mode expansion did not capture enough of the state.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int suggested_n_max)
      : Error(what), suggested_n_max_(suggested_n_max) {}
  int suggested_n_max() const noexcept { return suggested_n_max_; }

 private:
  int suggested_n_max_;
};

// Malformed or unknown configuration keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace twisted
