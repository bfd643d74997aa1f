#pragma once

#include <stdexcept>
#include <string>

namespace splitcurve {

/// Malformed or out-of-range input (bad edge index, infeasible genus, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical construction failed its genericity or conditioning checks.
class GenericityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace splitcurve
