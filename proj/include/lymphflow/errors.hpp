#ifndef LYMPHFLOW_ERRORS_HPP
#define LYMPHFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lymphflow {

/// Raised when an algorithm fails numerically (lost bracket, step underflow,
/// non-convergence). Input validation problems use std::invalid_argument /
/// std::domain_error instead, so callers can map the two classes to distinct
/// exit codes.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lymphflow

#endif  // LYMPHFLOW_ERRORS_HPP
