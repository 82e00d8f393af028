#pragma once

#include <stdexcept>
#include <string>

namespace isrsgn {

/// Invalid configuration, table, plan or argument. Maps to CLI exit code 1.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Integration blow-up, non-finite intermediate or fit failure. Maps to CLI
/// exit code 2.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace isrsgn
