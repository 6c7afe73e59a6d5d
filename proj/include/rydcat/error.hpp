#pragma once

#include <stdexcept>
#include <string>

namespace rydcat {

/// Bad arguments or configuration. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite values, integrator failure, or populations out of range.
/// Maps to CLI exit code 3.
class NumericalFault : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace rydcat
