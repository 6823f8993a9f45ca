#ifndef DUNKL_A2_DERIVATION_HPP
#define DUNKL_A2_DERIVATION_HPP

#include <string>
#include <vector>

#include "dunkl_a2/types.hpp"

namespace dunkl_a2 {

enum class CheckMethod { kQuadrature, kFiniteDifference, kPointwise, kExact };

std::string to_string(CheckMethod m);

/// One identity of the integral-formula derivation. `residual` is
/// |lhs - rhs| / max(|lhs|, sum of |rhs terms|) for the identity in its
/// correct form; `printed_residual` is the same for the form as originally
/// written when that differs (a sign or a constant), else equal to
/// `residual`.
struct IdentityResidual {
  std::string name;
  CheckMethod method = CheckMethod::kQuadrature;
  double residual = 0;
  double printed_residual = 0;
  bool printed_differs = false;
  double tolerance = 0;
  std::string note;
  bool passed() const { return residual <= tolerance; }
};

struct DerivationReport {
  std::vector<IdentityResidual> entries;
  bool all_passed() const;
  const IdentityResidual* find(const std::string& name) const;
};

inline constexpr double kQuadratureIdentityTol = 1e-8;
inline constexpr double kFiniteDifferenceIdentityTol = 1e-6;
inline constexpr double kPointwiseIdentityTol = 1e-7;

/// Evaluates every step of the derivation at (k, mu, lambda): the moment
/// identities for J_{k+1} against derivatives of W_{k+1}, the two pointwise
/// integration-by-parts observations, the T_1, T_2 and T formulas for
/// V(.) J_{k+1}(., lambda), and the E_k integrand before simplification.
/// With include_exact, the polynomial identities (factorizations,
/// W-reductions, final simplifications, density bracket, Dunkl action on
/// V f) are added as exact checks.
DerivationReport verify_derivation_identities(double k, const Point3d& mu,
                                              const ChamberPoint<double>& lambda,
                                              int n_nodes = 64, bool include_exact = true);

}  // namespace dunkl_a2

#endif  // DUNKL_A2_DERIVATION_HPP
