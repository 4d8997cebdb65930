#pragma once

#include <stdexcept>
#include <string>

namespace sfm {

// Bad caller input: length mismatches, non-nested sets, invalid configs.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Reference oracles refuse instances beyond their enumeration limit.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate or structural guarantee failed to hold. Never swallowed.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfm
