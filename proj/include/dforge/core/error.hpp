#pragma once

#include <stdexcept>

namespace dforge {

/// Base of every failure raised by the toolkit. Validation problems are
/// reported as ValidationReport entries instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dforge
