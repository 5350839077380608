#pragma once

#include <stdexcept>
#include <string>

namespace corrtherm {

/// Precondition violated by the caller (bad range, bad shape, bad flag).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a result (no sign change, iteration cap).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Target energy lies above what a bounded spectrum can hold at positive temperature.
class SaturationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrtherm
