#pragma once

#include <stdexcept>

namespace groupstat {

// Iterative routine failed to converge or produced a non-finite result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace groupstat
