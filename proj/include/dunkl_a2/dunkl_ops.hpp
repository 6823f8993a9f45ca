#ifndef DUNKL_A2_DUNKL_OPS_HPP
#define DUNKL_A2_DUNKL_OPS_HPP

#include <array>
#include <cmath>
#include <concepts>
#include <functional>

#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/kernels.hpp"
#include "dunkl_a2/types.hpp"

namespace dunkl_a2 {

/// Black-box scalar field on R^3. Any callable with this signature works
/// with the operators below; the alias is for storage.
template <std::floating_point Scalar>
using ScalarField = std::function<Scalar(const Point3<Scalar>&)>;

/// Default step 1e-4 (1 + |x|).
template <std::floating_point Scalar>
Scalar default_step(const Point3<Scalar>& x) {
  return Scalar(1e-4) * (Scalar(1) + x.norm());
}

/// Directional derivative of f at x along dir: five-point central
/// differences at h and h/2, combined by one Richardson step.
template <std::floating_point Scalar, typename F>
Scalar directional_derivative(const F& f, const Point3<Scalar>& x,
                              const Point3<Scalar>& dir, Scalar h) {
  auto five_point = [&](Scalar s) {
    const Scalar fp2 = f(Point3<Scalar>(x + Scalar(2) * s * dir));
    const Scalar fp1 = f(Point3<Scalar>(x + s * dir));
    const Scalar fm1 = f(Point3<Scalar>(x - s * dir));
    const Scalar fm2 = f(Point3<Scalar>(x - Scalar(2) * s * dir));
    return (-fp2 + Scalar(8) * fp1 - Scalar(8) * fm1 + fm2) / (Scalar(12) * s);
  };
  const Scalar coarse = five_point(h);
  const Scalar fine = five_point(h / Scalar(2));
  return (Scalar(16) * fine - coarse) / Scalar(15);
}

/// (T_i f)(x) for i in {0, 1, 2}: the partial derivative by finite
/// differences plus k sum_{j != i} (f(x) - f(s_ij x)) / (x_i - x_j).
/// Where |x_i - x_j| <= 1e-6 (1 + |x|) the quotient is replaced by its
/// limit, the derivative along e_i - e_j at the midpoint.
/// h <= 0 selects default_step(x).
template <std::floating_point Scalar, typename F>
Scalar apply_dunkl_T(int i, Scalar k, const F& f, const Point3<Scalar>& x,
                     Scalar h = Scalar(-1)) {
  if (i < 0 || i > 2) throw DomainError("Dunkl operator index must be 0, 1 or 2");
  if (!x.allFinite()) throw DomainError("evaluation point must be finite");
  if (!(h > Scalar(0))) h = default_step(x);
  const Point3<Scalar> ei = Point3<Scalar>::Unit(i);
  Scalar result = directional_derivative(f, x, ei, h);
  if (k == Scalar(0)) return result;

  const Scalar fx = f(x);
  const Scalar delta = Scalar(1e-6) * (Scalar(1) + x.norm());
  for (int j = 0; j < 3; ++j) {
    if (j == i) continue;
    const Scalar gap = x(i) - x(j);
    if (std::abs(gap) <= delta) {
      Point3<Scalar> mid = x;
      mid(i) = mid(j) = (x(i) + x(j)) / Scalar(2);
      const Point3<Scalar> dir = ei - Point3<Scalar>::Unit(j);
      result += k * directional_derivative(f, mid, dir, h);
    } else {
      Point3<Scalar> swapped = x;
      std::swap(swapped(i), swapped(j));
      result += k * (fx - f(swapped)) / gap;
    }
  }
  return result;
}

template <std::floating_point Scalar>
struct EigenResiduals {
  /// |T_i E - lambda_i E| / scale with scale = max(1, |E| max_i |lambda_i|).
  std::array<Scalar, 3> r{};
  /// |sum_i T_i E| / scale.
  Scalar sum = 0;
  Scalar E = 0;
  Scalar max() const { return std::max({r[0], r[1], r[2]}); }
};

/// Residuals of T_i E_k(., lambda)(mu) = lambda_i E_k(mu, lambda).
template <std::floating_point Scalar>
EigenResiduals<Scalar> verify_eigen(Scalar k, const Point3<Scalar>& mu,
                                    const ChamberPoint<Scalar>& lambda,
                                    Scalar h = Scalar(-1),
                                    int n_nodes = kDefaultQuadOrder) {
  const KernelA2<Scalar> kernel(Multiplicity<Scalar>(k), lambda, n_nodes);
  auto field = [&](const Point3<Scalar>& p) { return kernel.E(p); };
  EigenResiduals<Scalar> out;
  out.E = kernel.E(mu);
  const Scalar scale =
      std::max(Scalar(1), std::abs(out.E) * lambda.vector().cwiseAbs().maxCoeff());
  Scalar total = 0;
  for (int i = 0; i < 3; ++i) {
    const Scalar t = apply_dunkl_T(i, k, field, mu, h);
    total += t;
    out.r[i] = std::abs(t - lambda[i] * out.E) / scale;
  }
  out.sum = std::abs(total) / scale;
  return out;
}

/// alpha = (2 l1 + l2) / (l1^2 + l2^2 + l1 l2),
/// beta  = (2 l2 + l1) / (l1^2 + l2^2 + l1 l2).
template <std::floating_point Scalar>
struct LemmaCoefficients {
  Scalar alpha;
  Scalar beta;

  explicit LemmaCoefficients(const ChamberPoint<Scalar>& l) {
    const Scalar den = l.l1() * l.l1() + l.l2() * l.l2() + l.l1() * l.l2();
    if (!(den > Scalar(0))) throw DomainError("degenerate lambda for lemma coefficients");
    alpha = (Scalar(2) * l.l1() + l.l2()) / den;
    beta = (Scalar(2) * l.l2() + l.l1()) / den;
  }
};

/// (alpha T_1 + beta T_2 + 1) f at mu.
template <std::floating_point Scalar, typename F>
Scalar apply_lemma_T(Scalar k, const ChamberPoint<Scalar>& lambda, const F& f,
                     const Point3<Scalar>& mu, Scalar h = Scalar(-1)) {
  const LemmaCoefficients<Scalar> c(lambda);
  return c.alpha * apply_dunkl_T(0, k, f, mu, h) +
         c.beta * apply_dunkl_T(1, k, f, mu, h) + f(mu);
}

/// T_V f = (T_1 - T_2)(T_2 - T_3)(T_1 - T_3) f by nested differencing.
/// Accurate to roughly 1e-4 relative; meant for smoke tests.
template <std::floating_point Scalar, typename F>
Scalar apply_T_V(Scalar k, const F& f, const Point3<Scalar>& x,
                 Scalar h = Scalar(-1)) {
  if (!(h > Scalar(0))) h = Scalar(1e-2) * (Scalar(1) + x.norm());
  auto diff = [k, h](int a, int b, auto g) {
    return [k, h, a, b, g](const Point3<Scalar>& p) {
      return apply_dunkl_T(a, k, g, p, h) - apply_dunkl_T(b, k, g, p, h);
    };
  };
  auto g13 = diff(0, 2, std::cref(f));
  auto g23 = diff(1, 2, g13);
  auto g12 = diff(0, 1, g23);
  return g12(x);
}

}  // namespace dunkl_a2

#endif  // DUNKL_A2_DUNKL_OPS_HPP
