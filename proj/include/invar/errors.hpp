#pragma once

#include <stdexcept>

namespace invar {

/// A computation would exceed a configured size bound (orbit length,
/// matrix columns, exponent tuples).
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace invar
