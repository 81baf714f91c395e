#pragma once

#include <stdexcept>
#include <string>

namespace torsionscope {

/// Invalid input in the mathematical domain (bad metric parameters, unsorted
/// scales, composite prime, ...). The CLI maps this to exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File-system or serialization failure. The CLI maps this to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace torsionscope
