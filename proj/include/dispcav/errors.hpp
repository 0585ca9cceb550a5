#pragma once
#include <stdexcept>

namespace dispcav {

// Numerical failure distinct from input validation: diverging series,
// iterations that do not converge, singular denominators.  The CLI maps
// std::invalid_argument to exit code 1 and numerical_error to exit code 2.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dispcav
