// error.hpp - exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace ricci {

// Problems attributable to input data or requested parameters
// (malformed files, infeasible generator settings, unknown nodes).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric or structural failures discovered during computation
// (disconnected graphs where a metric is required, non-finite values,
// solver breakdowns).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ricci
