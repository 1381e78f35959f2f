#pragma once

#include <stdexcept>
#include <string>

namespace hpfrac {

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConformityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inadmissible input data: coefficient values or malformed files.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LocationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DefinitenessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hpfrac
