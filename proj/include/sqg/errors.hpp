#ifndef SQG_ERRORS_HPP
#define SQG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sqg {

/// Two fields (or a field and a velocity) live on different grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field violates a band-limit precondition of the operation.
class BandLimitViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sqg

#endif
