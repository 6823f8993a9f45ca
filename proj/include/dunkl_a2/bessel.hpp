#ifndef DUNKL_A2_BESSEL_HPP
#define DUNKL_A2_BESSEL_HPP

// Normalized modified Bessel function
//
//   J_alpha(z) = Gamma(alpha + 1) (z/2)^{-alpha} I_alpha(z)
//              = sum_n Gamma(alpha + 1) / (n! Gamma(n + alpha + 1)) (z/2)^{2n},
//
// so that J_alpha(0) = 1, together with its first two z-derivatives. For
// alpha = k - 1/2 it has the integral form
//
//   J_{k-1/2}(z) = Gamma(2k) / (2^{2k-1} Gamma(k)^2) int_{-1}^{1} e^{zt} (1-t^2)^{k-1} dt.

#include <cmath>
#include <concepts>

#include <Eigen/Core>

#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/quadrature.hpp"

namespace dunkl_a2 {

/// Bessel order alpha > -1/2.
template <std::floating_point Scalar>
class BesselOrder {
 public:
  explicit BesselOrder(Scalar alpha) : alpha_(alpha) {
    if (!(alpha > Scalar(-0.5)) || !std::isfinite(alpha)) {
      throw DomainError("Bessel order must exceed -1/2");
    }
  }
  Scalar value() const { return alpha_; }
  operator Scalar() const { return alpha_; }

 private:
  Scalar alpha_;
};

template <std::floating_point Scalar>
struct BesselValues {
  Scalar value;
  Scalar first;
  Scalar second;
};

inline constexpr int kBesselMaxTerms = 200;

/// J, J' and J'' from one pass over the even power series. Terms are
/// summed until each new term is below 1e-17 of its partial sum.
template <std::floating_point Scalar>
BesselValues<Scalar> bessel_J_all(BesselOrder<Scalar> alpha, Scalar z) {
  if (!std::isfinite(z)) {
    throw DomainError("Bessel argument must be finite");
  }
  const Scalar a = alpha.value();
  const Scalar quarter_z2 = z * z / Scalar(4);
  // c_n (z/2)^{2n} for the value; derivative terms follow from it.
  Scalar term = 1;
  BesselValues<Scalar> out{1, 0, 0};
  if (z == Scalar(0)) {
    out.second = Scalar(1) / (Scalar(2) * (a + Scalar(1)));
    return out;
  }
  const Scalar tol = Scalar(1e-17);
  for (int n = 1; n < kBesselMaxTerms; ++n) {
    term *= quarter_z2 / (Scalar(n) * (Scalar(n) + a));
    // d/dz of c_n z^{2n} = 2n c_n z^{2n-1}
    const Scalar d1 = Scalar(2 * n) * term / z;
    const Scalar d2 = Scalar(2 * n) * Scalar(2 * n - 1) * term / (z * z);
    out.value += term;
    out.first += d1;
    out.second += d2;
    if (std::abs(term) < tol * std::abs(out.value) &&
        std::abs(d1) < tol * std::abs(out.first) &&
        std::abs(d2) < tol * std::abs(out.second)) {
      break;
    }
  }
  return out;
}

template <std::floating_point Scalar>
Scalar bessel_J(BesselOrder<Scalar> alpha, Scalar z) {
  return bessel_J_all(alpha, z).value;
}

/// order must be 1 or 2.
template <std::floating_point Scalar>
Scalar bessel_J_deriv(BesselOrder<Scalar> alpha, Scalar z, int order) {
  const auto v = bessel_J_all(alpha, z);
  switch (order) {
    case 0:
      return v.value;
    case 1:
      return v.first;
    case 2:
      return v.second;
    default:
      throw DomainError("derivative order must be 1 or 2");
  }
}

/// Coefficientwise evaluation over an Eigen array of arguments.
template <typename Derived>
auto bessel_J(BesselOrder<typename Derived::Scalar> alpha,
              const Eigen::ArrayBase<Derived>& z) {
  using S = typename Derived::Scalar;
  return z.derived()
      .unaryExpr([alpha](S t) { return bessel_J(alpha, t); })
      .eval();
}

/// log of Gamma(2k) / (2^{2k-1} Gamma(k)^2).
template <std::floating_point Scalar>
Scalar bessel_integral_log_prefactor(Scalar k) {
  return std::lgamma(Scalar(2) * k) -
         (Scalar(2) * k - Scalar(1)) * std::log(Scalar(2)) -
         Scalar(2) * std::lgamma(k);
}

/// J_{k-1/2}(z) from its integral representation, with an n-point
/// Gauss-Jacobi rule carrying the (1-t^2)^{k-1} weight.
template <std::floating_point Scalar>
Scalar bessel_J_integral(Scalar k, Scalar z, int n_nodes) {
  if (!(k > Scalar(0))) {
    throw DomainError("k must be positive");
  }
  if (!std::isfinite(z)) {
    throw DomainError("Bessel argument must be finite");
  }
  const auto rule = gauss_jacobi<Scalar>(n_nodes, k - Scalar(1), k - Scalar(1),
                                         Scalar(-1), Scalar(1));
  const Scalar integral =
      integrate_1d(rule, [z](Scalar t) { return std::exp(z * t); });
  return std::exp(bessel_integral_log_prefactor(k)) * integral;
}

}  // namespace dunkl_a2

#endif  // DUNKL_A2_BESSEL_HPP
