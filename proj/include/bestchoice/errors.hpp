#pragma once

#include <stdexcept>

namespace bestchoice {

// Thrown when an iterative numerical routine fails to reach its tolerance
// or a required bracket/identity check does not hold.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bestchoice
