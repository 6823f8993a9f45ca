#ifndef DUNKL_A2_QUADRATURE_HPP
#define DUNKL_A2_QUADRATURE_HPP

#include <cmath>
#include <concepts>
#include <numbers>
#include <type_traits>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "dunkl_a2/errors.hpp"

namespace dunkl_a2 {

/// Quadrature rule on [a, b] for the weight (b - t)^p (t - a)^q.
///
/// `from_a` and `to_b` hold t_i - a and b - t_i computed without
/// cancellation, so integrands with factors vanishing at an endpoint can
/// be evaluated accurately at nodes that round onto it.
template <std::floating_point Scalar>
struct QuadRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector nodes;
  Vector weights;
  Vector from_a;
  Vector to_b;
  Scalar a = -1;
  Scalar b = 1;
  Scalar p = 0;
  Scalar q = 0;

  Eigen::Index size() const { return nodes.size(); }
};

namespace detail {

template <std::floating_point Scalar>
Scalar log_beta(Scalar x, Scalar y) {
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

}  // namespace detail

/// n-point Gauss-Jacobi rule for (b - t)^p (t - a)^q on [a, b], exact for
/// polynomials of degree <= 2n - 1.
///
/// Golub-Welsch: eigen-decomposition of the Jacobi matrix of the monic
/// recurrence on [-1, 1], then the affine map t -> a + (b - a)(t + 1)/2
/// with weights scaled by ((b - a)/2)^{p+q+1}.
template <std::floating_point Scalar>
QuadRule<Scalar> gauss_jacobi(int n, Scalar p, Scalar q, Scalar a, Scalar b) {
  if (n < 1) {
    throw DomainError("quadrature needs at least one node");
  }
  if (!(p > Scalar(-1)) || !(q > Scalar(-1))) {
    throw DomainError("non-integrable endpoint: Jacobi exponents must exceed -1");
  }
  if (!(a < b)) {
    throw DomainError("quadrature interval must satisfy a < b");
  }
  using Vector = typename QuadRule<Scalar>::Vector;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  // Weight (1 - t)^p (1 + t)^q: Jacobi parameters alpha = p, beta = q.
  const Scalar s = p + q;
  Vector diag(n);
  Vector sub(n > 1 ? n - 1 : 0);
  diag(0) = (q - p) / (s + Scalar(2));
  for (int i = 1; i < n; ++i) {
    const Scalar m = Scalar(i);
    const Scalar t = Scalar(2) * m + s;
    diag(i) = (q * q - p * p) / (t * (t + Scalar(2)));
    Scalar b2;
    if (i == 1) {
      b2 = Scalar(4) * (Scalar(1) + p) * (Scalar(1) + q) /
           ((s + Scalar(2)) * (s + Scalar(2)) * (s + Scalar(3)));
    } else {
      b2 = Scalar(4) * m * (m + p) * (m + q) * (m + s) /
           (t * t * (t + Scalar(1)) * (t - Scalar(1)));
    }
    sub(i - 1) = std::sqrt(b2);
  }

  const Scalar log_mu0 = (s + Scalar(1)) * std::log(Scalar(2)) +
                         detail::log_beta(p + Scalar(1), q + Scalar(1));

  Vector t(n);
  Vector w(n);
  if (n == 1) {
    t(0) = diag(0);
    w(0) = std::exp(log_mu0);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw InternalError("Jacobi matrix eigen-decomposition failed");
    }
    t = solver.eigenvalues();
    const Scalar mu0 = std::exp(log_mu0);
    for (int i = 0; i < n; ++i) {
      const Scalar v = solver.eigenvectors()(0, i);
      w(i) = mu0 * v * v;
    }
  }

  QuadRule<Scalar> rule;
  rule.a = a;
  rule.b = b;
  rule.p = p;
  rule.q = q;
  const Scalar half = (b - a) / Scalar(2);
  const Scalar scale = std::pow(half, s + Scalar(1));
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.from_a.resize(n);
  rule.to_b.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.from_a(i) = half * (Scalar(1) + t(i));
    rule.to_b(i) = half * (Scalar(1) - t(i));
    rule.nodes(i) = t(i) <= Scalar(0) ? a + rule.from_a(i) : b - rule.to_b(i);
    rule.weights(i) = w(i) * scale;
  }
  return rule;
}

template <std::floating_point Scalar>
QuadRule<Scalar> gauss_legendre(int n, Scalar a, Scalar b) {
  return gauss_jacobi<Scalar>(n, 0, 0, a, b);
}

/// Double-exponential (tanh-sinh) rule on [a, b] with 2 * half_points + 1
/// nodes on the uniform grid |u| <= u_max. Handles integrable algebraic and
/// logarithmic endpoint singularities of the integrand itself, so the
/// rule's own weight is 1 (p = q = 0).
template <std::floating_point Scalar>
QuadRule<Scalar> tanh_sinh(int half_points, Scalar a, Scalar b,
                           Scalar u_max = Scalar(4.5)) {
  if (half_points < 1) {
    throw DomainError("quadrature needs at least one node");
  }
  if (!(a < b)) {
    throw DomainError("quadrature interval must satisfy a < b");
  }
  constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
  const int n = 2 * half_points + 1;
  const Scalar h = u_max / Scalar(half_points);
  const Scalar half = (b - a) / Scalar(2);
  QuadRule<Scalar> rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.from_a.resize(n);
  rule.to_b.resize(n);
  for (int j = -half_points; j <= half_points; ++j) {
    const Scalar u = h * Scalar(j);
    const Scalar s = half_pi * std::sinh(u);
    const Scalar e = std::exp(Scalar(-2) * std::abs(s));
    // 1 - tanh|s| = 2e / (1 + e)
    const Scalar near = Scalar(2) * e / (Scalar(1) + e);
    const Scalar cs = std::cosh(s);
    const int i = j + half_points;
    rule.weights(i) = h * half * half_pi * std::cosh(u) / (cs * cs);
    if (s < Scalar(0)) {
      rule.from_a(i) = half * near;
      rule.to_b(i) = Scalar(2) * half - rule.from_a(i);
      rule.nodes(i) = a + rule.from_a(i);
    } else {
      rule.to_b(i) = half * near;
      rule.from_a(i) = Scalar(2) * half - rule.to_b(i);
      rule.nodes(i) = b - rule.to_b(i);
    }
  }
  return rule;
}

namespace detail {

template <typename F, typename Scalar>
Scalar call_at(const F& f, const QuadRule<Scalar>& rule, Eigen::Index i) {
  if constexpr (std::is_invocable_v<const F&, Scalar, Scalar, Scalar>) {
    return f(rule.nodes(i), rule.from_a(i), rule.to_b(i));
  } else {
    return f(rule.nodes(i));
  }
}

}  // namespace detail

/// sum_i w_i f(t_i). `smooth` excludes the rule's weight function. It may
/// take (t) or (t, t - a, b - t).
template <std::floating_point Scalar, typename F>
Scalar integrate_1d(const QuadRule<Scalar>& rule, const F& smooth) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    if (rule.weights(i) == Scalar(0)) continue;
    const Scalar v = detail::call_at(smooth, rule, i);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite integrand", double(rule.nodes(i)));
    }
    sum += rule.weights(i) * v;
  }
  return sum;
}

/// Tensor-product rule: outer sum over rule1 (first argument), inner over
/// rule2 (second argument).
template <std::floating_point Scalar, typename F>
Scalar product_rule_2d(const QuadRule<Scalar>& rule1,
                       const QuadRule<Scalar>& rule2, const F& smooth) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < rule1.size(); ++i) {
    Scalar inner = 0;
    for (Eigen::Index j = 0; j < rule2.size(); ++j) {
      const Scalar v = smooth(rule1.nodes(i), rule2.nodes(j));
      if (!std::isfinite(v)) {
        throw EvaluationError("non-finite integrand", double(rule2.nodes(j)));
      }
      inner += rule2.weights(j) * v;
    }
    sum += rule1.weights(i) * inner;
  }
  return sum;
}

}  // namespace dunkl_a2

#endif  // DUNKL_A2_QUADRATURE_HPP
