#ifndef DUNKL_A2_ERRORS_HPP
#define DUNKL_A2_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dunkl_a2 {

/// Argument outside the domain where a formula is defined (k <= 0, chamber
/// wall, non-integrable endpoint exponent, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature integrand produced a non-finite value at a node.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double node)
      : std::runtime_error(what + " (node " + std::to_string(node) + ")"),
        node_(node) {}

  double node() const { return node_; }

 private:
  double node_;
};

/// Broken internal invariant of the exact oracle (non-exact division,
/// singular Gram matrix). Never expected for valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dunkl_a2

#endif  // DUNKL_A2_ERRORS_HPP
