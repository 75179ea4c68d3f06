#ifndef FIOLAB_ERRORS_HPP
#define FIOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fiolab {

// Invalid configuration or usage: bad grid sizes, mismatched sides,
// unknown experiment kinds.  CLI maps this to exit code 2.
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numerical precondition failed at run time: degenerate Hessian,
// violated expansion bound, sample set touching a singularity.
// CLI maps this to exit code 3.
class precondition_error : public std::domain_error {
 public:
  explicit precondition_error(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace fiolab

#endif
