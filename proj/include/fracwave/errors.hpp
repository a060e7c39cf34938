#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Bad parameters or shapes. Raised before any heavy allocation when possible.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative solve or quadrature did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The time stepper produced non-finite or runaway values.
class BlowUpError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracwave
