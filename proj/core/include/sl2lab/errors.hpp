#pragma once

#include <stdexcept>
#include <string>

namespace sl2lab {

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a parameter is admissible in principle but exceeds a verified bound
// (e.g. thickening beyond the embedding radius).
struct ParameterTooLarge : InvalidParameter {
  using InvalidParameter::InvalidParameter;
};

struct OutOfDomain : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidLattice : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResourceLimit : std::length_error {
  using std::length_error::length_error;
};

struct WrongVariant : std::logic_error {
  using std::logic_error::logic_error;
};

struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotTransversal : ConfigurationError {
  using ConfigurationError::ConfigurationError;
};

}  // namespace sl2lab
