#ifndef DUNKL_A2_KERNELS_HPP
#define DUNKL_A2_KERNELS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "dunkl_a2/bessel.hpp"
#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/quadrature.hpp"
#include "dunkl_a2/types.hpp"

namespace dunkl_a2 {

inline constexpr int kDefaultQuadOrder = 64;

/// W_k(nu, lambda) = ((l1-n1)(l1-n2)(l2-n2)(n1-l2)(n1-l3)(n2-l3))^{k-1} on the
/// open box l2 < n1 < l1, l3 < n2 < l2.
template <std::floating_point Scalar>
Scalar weight_W(Scalar k, Scalar nu1, Scalar nu2,
                const ChamberPoint<Scalar>& l) {
  if (!(nu1 > l.l2() && nu1 < l.l1() && nu2 > l.l3() && nu2 < l.l2())) {
    throw DomainError("nu outside the open integration box");
  }
  if (k == Scalar(1)) return Scalar(1);
  const Scalar prod = (l.l1() - nu1) * (l.l1() - nu2) * (l.l2() - nu2) *
                      (nu1 - l.l2()) * (nu1 - l.l3()) * (nu2 - l.l3());
  return std::pow(prod, k - Scalar(1));
}

/// Tensor Gauss-Jacobi grid over [l2, l1] x [l3, l2] carrying the weight
/// W_k(nu, lambda). The four factors vanishing on the box boundary live in
/// the rule weights; the two bounded factors (l1 - n2)^{k-1}, (n1 - l3)^{k-1}
/// are folded into the stored weights.
template <std::floating_point Scalar>
class WeightedBox {
 public:
  struct Node {
    Scalar nu1;
    Scalar nu2;
    Scalar weight;
  };

  WeightedBox(Scalar k, const ChamberPoint<Scalar>& l, int n_nodes)
      : lambda_(l), k_(k) {
    if (!(k > Scalar(0))) throw DomainError("k must be positive");
    if (n_nodes < 1) throw DomainError("quadrature needs at least one node");
    const Scalar e = k - Scalar(1);
    rule1_ = gauss_jacobi<Scalar>(n_nodes, e, e, l.l2(), l.l1());
    rule2_ = gauss_jacobi<Scalar>(n_nodes, e, e, l.l3(), l.l2());
    nodes_.reserve(std::size_t(n_nodes) * std::size_t(n_nodes));
    for (Eigen::Index i = 0; i < rule1_.size(); ++i) {
      const Scalar n1 = rule1_.nodes(i);
      for (Eigen::Index j = 0; j < rule2_.size(); ++j) {
        const Scalar n2 = rule2_.nodes(j);
        const Scalar smooth =
            e == Scalar(0)
                ? Scalar(1)
                : std::pow((l.l1() - n2) * (n1 - l.l3()), e);
        nodes_.push_back({n1, n2, rule1_.weights(i) * rule2_.weights(j) * smooth});
      }
    }
  }

  /// sum over nodes of weight * f(nu1, nu2), i.e. int int f W_k dnu.
  template <typename F>
  Scalar integrate(const F& f) const {
    Scalar sum = 0;
    for (const auto& nd : nodes_) {
      sum += nd.weight * f(nd.nu1, nd.nu2);
    }
    return sum;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const ChamberPoint<Scalar>& lambda() const { return lambda_; }
  Scalar k() const { return k_; }

 private:
  ChamberPoint<Scalar> lambda_;
  Scalar k_;
  QuadRule<Scalar> rule1_;
  QuadRule<Scalar> rule2_;
  std::vector<Node> nodes_;
};

/// Evaluator for the generalized Bessel function J_k(., lambda) and the
/// Dunkl kernel E_k(., lambda) of type A2 at fixed (k, lambda, quadrature
/// order). Both are double integrals over [l2, l1] x [l3, l2] against W_k:
///
///   J_k(mu, l) = G(3k) / (V(l)^{2k-1} G(k)^3)
///       int int e^{s (n1+n2)/2} J_{k-1/2}(d (n1-n2)/2) (n1 - n2) W_k dnu
///
///   E_k(mu, l) = G(3k) / (V(l)^{2k} G(k)^3)
///       int int { 3 (l1-l2)(n1-n2) J_{k-1/2}(.)
///                 - 6 (n1 n2 + l3 (n1+n2)/2 + l1 l2) J'_{k-1/2}(.) }
///             (l3 - n1)(l3 - n2) e^{s (n1+n2)/2} W_k dnu
///
/// with s = mu1 + mu2 - 2 mu3 and d = mu1 - mu2. Construction is the
/// expensive part; evaluation is const and thread-safe.
template <std::floating_point Scalar>
class KernelA2 {
 public:
  KernelA2(Multiplicity<Scalar> k, const ChamberPoint<Scalar>& lambda,
           int n_nodes = kDefaultQuadOrder)
      : k_(k.value()),
        lambda_(lambda),
        order_(k.value() - Scalar(0.5)),
        box_(k.value(), lambda, n_nodes) {
    const Scalar V = vandermonde(lambda);
    const Scalar lg = std::lgamma(Scalar(3) * k_) - Scalar(3) * std::lgamma(k_);
    log_prefactor_J_ = lg - (Scalar(2) * k_ - Scalar(1)) * std::log(V);
    log_prefactor_E_ = lg - Scalar(2) * k_ * std::log(V);

    const Scalar l1 = lambda.l1(), l2 = lambda.l2(), l3 = lambda.l3();
    terms_.reserve(box_.nodes().size());
    for (const auto& nd : box_.nodes()) {
      const Scalar a = nd.nu1, b = nd.nu2;
      const Scalar edge = (l3 - a) * (l3 - b);
      terms_.push_back({(a + b) / Scalar(2), (a - b) / Scalar(2), nd.weight,
                        Scalar(3) * (l1 - l2) * (a - b) * edge,
                        Scalar(-6) * (a * b + l3 * (a + b) / Scalar(2) + l1 * l2) *
                            edge});
    }
  }

  /// E_k(mu, lambda).
  Scalar E(const Point3<Scalar>& mu) const {
    const Scalar s = mu(0) + mu(1) - Scalar(2) * mu(2);
    const Scalar d = mu(0) - mu(1);
    Scalar sum = 0;
    for (const auto& t : terms_) {
      const auto bes = bessel_J_all(order_, d * t.half_diff);
      sum += t.weight * std::exp(s * t.half_sum) *
             (t.coef_J * bes.value + t.coef_dJ * bes.first);
    }
    return scale(log_prefactor_E_, sum);
  }

  /// J_k(mu, lambda).
  Scalar J(const Point3<Scalar>& mu) const {
    const Scalar s = mu(0) + mu(1) - Scalar(2) * mu(2);
    const Scalar d = mu(0) - mu(1);
    Scalar sum = 0;
    for (const auto& t : terms_) {
      sum += t.weight * std::exp(s * t.half_sum) *
             bessel_J(order_, d * t.half_diff) * Scalar(2) * t.half_diff;
    }
    return scale(log_prefactor_J_, sum);
  }

  Scalar k() const { return k_; }
  const ChamberPoint<Scalar>& lambda() const { return lambda_; }
  const WeightedBox<Scalar>& box() const { return box_; }

 private:
  struct Term {
    Scalar half_sum;
    Scalar half_diff;
    Scalar weight;
    Scalar coef_J;
    Scalar coef_dJ;
  };

  static Scalar scale(Scalar log_prefactor, Scalar integral) {
    if (integral == Scalar(0)) return Scalar(0);
    const Scalar mag = std::exp(log_prefactor + std::log(std::abs(integral)));
    return integral < Scalar(0) ? -mag : mag;
  }

  Scalar k_;
  ChamberPoint<Scalar> lambda_;
  BesselOrder<Scalar> order_;
  WeightedBox<Scalar> box_;
  Scalar log_prefactor_J_ = 0;
  Scalar log_prefactor_E_ = 0;
  std::vector<Term> terms_;
};

template <std::floating_point Scalar>
Scalar gen_bessel_J(Scalar k, const Point3<Scalar>& mu,
                    const ChamberPoint<Scalar>& lambda,
                    int n_nodes = kDefaultQuadOrder) {
  return KernelA2<Scalar>(Multiplicity<Scalar>(k), lambda, n_nodes).J(mu);
}

template <std::floating_point Scalar>
Scalar dunkl_E(Scalar k, const Point3<Scalar>& mu,
               const ChamberPoint<Scalar>& lambda,
               int n_nodes = kDefaultQuadOrder) {
  return KernelA2<Scalar>(Multiplicity<Scalar>(k), lambda, n_nodes).E(mu);
}

// ---------------------------------------------------------------------------
// Intertwining density F_k(x, y, lambda) with respect to dx dy, where
// nu1 = x + y, nu2 = x - y are coordinates in the basis (e1 - e3, e2 - e3):
//
//   E_k(mu, l) = int int e^{(mu1+mu2-2mu3) x + (mu1-mu2) y} F_k(x, y, l) dx dy
//
//   F_k = G(2k) G(3k) / (2^{2k-2} G(k)^5 V^{2k})
//         int_L^U [6 z^2 (y + l1 - l2) - 6 y (x - l1)(x - l2)]
//                 (((l3 - x)^2 - z^2) / z^2)^k
//                 ((z^2 - y^2)((l1 - x)^2 - z^2)(z^2 - (l2 - x)^2))^{k-1} dz
//
// with L = max(|y|, |x - l2|), U = min(x - l3, l1 - x).

enum class DensityBracket {
  /// 6 z^2 (y + l1 - l2) - 6 y (x - l1)(x - l2), consistent with E_k.
  kCorrected,
  /// 3 z^2 (2y + l1 - l2) - 6 y (x - l1)(x - l2); integrates to 1/2.
  kPrinted,
};

template <std::floating_point Scalar>
Scalar density_log_prefactor(Scalar k, const ChamberPoint<Scalar>& l) {
  return std::lgamma(Scalar(2) * k) + std::lgamma(Scalar(3) * k) -
         (Scalar(2) * k - Scalar(2)) * std::log(Scalar(2)) -
         Scalar(5) * std::lgamma(k) -
         Scalar(2) * k * std::log(vandermonde(l));
}

/// max(|y|, |x - l2|) <= min(x - l3, l1 - x).
template <std::floating_point Scalar>
bool in_density_support(Scalar x, Scalar y, const ChamberPoint<Scalar>& l) {
  return std::max(std::abs(y), std::abs(x - l.l2())) <=
         std::min(x - l.l3(), l.l1() - x);
}

/// co(lambda) = {nu in V : l3 <= nu_i <= l1}, with the embedded point
/// (x + y, x - y, -2x).
template <std::floating_point Scalar>
bool in_orbit_hull(Scalar x, Scalar y, const ChamberPoint<Scalar>& l) {
  const Scalar nu[3] = {x + y, x - y, Scalar(-2) * x};
  for (Scalar v : nu) {
    if (v < l.l3() || v > l.l1()) return false;
  }
  return true;
}

namespace detail {

/// Geometry of one z-integral. `s` = z - L and `t` = U - z are supplied by
/// the caller so that the vanishing factors are computed without
/// cancellation; `lower_gap` = L - (other lower candidate) >= 0 and
/// `upper_gap` = (other upper candidate) - U >= 0.
template <std::floating_point Scalar>
struct DensityGeometry {
  Scalar k;
  Scalar x;
  Scalar y;
  Scalar l1, l2, l3;
  Scalar L;
  Scalar U;
  bool lower_is_y;  // L = |y| (else L = |x - l2|)
  bool upper_is_A;  // U = x - l3 (else U = l1 - x)
  Scalar lower_gap;
  Scalar upper_gap;
  DensityBracket bracket;
};

struct DroppedFactors {
  bool lower = false;        // (z - L)^{k-1} carried by the rule
  bool lower_other = false;  // second lower factor also vanishes at L
  bool upper = false;        // (U - z)^{e_U} carried by the rule
  bool upper_other = false;
};

template <std::floating_point Scalar>
Scalar density_integrand(const DensityGeometry<Scalar>& g, Scalar s, Scalar t,
                         DroppedFactors drop = {}) {
  const Scalar z = g.L + s;
  const Scalar ym = std::abs(g.y);
  const Scalar c = std::abs(g.x - g.l2);
  const Scalar A = g.x - g.l3;
  const Scalar B = g.l1 - g.x;

  // (z^2 - |y|^2) and (z^2 - c^2)
  Scalar low_active = drop.lower ? Scalar(1) : s;
  low_active *= z + g.L;
  Scalar low_other = drop.lower_other ? Scalar(1) : s + g.lower_gap;
  low_other *= z + (g.lower_is_y ? c : ym);
  // (A^2 - z^2) and (B^2 - z^2)
  Scalar up_active = (drop.upper ? Scalar(1) : t) * (g.U + z);
  Scalar up_other = (drop.upper_other ? Scalar(1) : t + g.upper_gap);
  up_other *= (g.upper_is_A ? B : A) + z;

  const Scalar a_factor = g.upper_is_A ? up_active : up_other;
  const Scalar b_factor = g.upper_is_A ? up_other : up_active;

  // Powers in log-space: near x = l2, y = 0 the factors underflow
  // separately while the product stays integrable.
  const Scalar km1 = g.k - Scalar(1);
  Scalar log_power = g.k * (std::log(a_factor) - Scalar(2) * std::log(z));
  if (km1 != Scalar(0)) {
    log_power += km1 * (std::log(low_active) + std::log(low_other) + std::log(b_factor));
  }

  const Scalar tail = Scalar(6) * g.y * (g.x - g.l1) * (g.x - g.l2);
  const Scalar bracket =
      g.bracket == DensityBracket::kCorrected
          ? Scalar(6) * z * z * (g.y + g.l1 - g.l2) - tail
          : Scalar(3) * z * z * (Scalar(2) * g.y + g.l1 - g.l2) - tail;
  return bracket * std::exp(log_power);
}

template <std::floating_point Scalar>
DensityGeometry<Scalar> density_geometry(Scalar k, Scalar x, Scalar y,
                                         const ChamberPoint<Scalar>& l,
                                         DensityBracket bracket) {
  DensityGeometry<Scalar> g{};
  g.k = k;
  g.x = x;
  g.y = y;
  g.l1 = l.l1();
  g.l2 = l.l2();
  g.l3 = l.l3();
  g.bracket = bracket;
  const Scalar ym = std::abs(y);
  const Scalar c = std::abs(x - l.l2());
  const Scalar A = x - l.l3();
  const Scalar B = l.l1() - x;
  g.lower_is_y = ym >= c;
  g.L = std::max(ym, c);
  g.lower_gap = std::abs(ym - c);
  g.upper_is_A = A <= B;
  g.U = std::min(A, B);
  g.upper_gap = std::abs(A - B);
  return g;
}

template <std::floating_point Scalar>
Scalar density_integral_tanh_sinh(const DensityGeometry<Scalar>& g,
                                  const QuadRule<Scalar>& unit) {
  const Scalar len = g.U - g.L;
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < unit.size(); ++i) {
    const Scalar s = len * unit.from_a(i);
    const Scalar t = len * unit.to_b(i);
    if (s == Scalar(0) || t == Scalar(0)) continue;
    const Scalar v = density_integrand(g, s, t);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite density integrand", double(g.L + s));
    }
    sum += unit.weights(i) * v;
  }
  return sum * len;
}

}  // namespace detail

/// Default half-width (in nodes) of the double-exponential rules used for
/// near-coincident endpoint singularities and for nested density
/// integration.
inline constexpr int kDensityHalfPoints = 40;

/// F_k(x, y, lambda). Zero outside the support. The z-integral uses a
/// Gauss-Jacobi rule whose endpoint exponents are those of the factors
/// vanishing there: (k-1) per vanishing lower factor, (k-1) for
/// (l1-x)^2 - z^2 and k for (l3-x)^2 - z^2 at the upper limit, summed on
/// ties (|y| = |x-l2| or x-l3 = l1-x within 1e-12). If the second candidate
/// for a limit lies within 5% of the interval length without tying, the
/// integrand is nearly singular there and a tanh-sinh rule is used instead.
/// Returns +infinity on the measure-zero set where the integral diverges.
template <std::floating_point Scalar>
Scalar density_F(Scalar k, Scalar x, Scalar y, const ChamberPoint<Scalar>& l,
                 int n_nodes = kDefaultQuadOrder,
                 DensityBracket bracket = DensityBracket::kCorrected) {
  if (!(k > Scalar(0))) throw DomainError("k must be positive");
  auto g = detail::density_geometry(k, x, y, l, bracket);
  if (!(g.L < g.U)) return Scalar(0);

  const Scalar len = g.U - g.L;
  const Scalar tie_tol = Scalar(1e-12) * std::max(Scalar(1), l.vector().cwiseAbs().maxCoeff());
  const Scalar km1 = k - Scalar(1);
  const Scalar log_pref = density_log_prefactor(k, l);

  // L = 0 means y = 0 and x = l2: the lower end carries z^{2k-4}.
  if (g.L <= tie_tol) {
    if (Scalar(2) * k - Scalar(4) <= Scalar(-1)) {
      return std::numeric_limits<Scalar>::infinity();
    }
    const auto unit = tanh_sinh<Scalar>(kDensityHalfPoints, 0, 1);
    return std::exp(log_pref) * detail::density_integral_tanh_sinh(g, unit);
  }

  detail::DroppedFactors drop;
  drop.lower = true;
  drop.upper = true;
  Scalar q = km1;
  Scalar p = g.upper_is_A ? k : km1;
  if (g.lower_gap <= tie_tol) {
    drop.lower_other = true;
    q += km1;
  }
  if (g.upper_gap <= tie_tol) {
    drop.upper_other = true;
    p += g.upper_is_A ? km1 : k;
  }
  if (q <= Scalar(-1)) {
    return std::numeric_limits<Scalar>::infinity();
  }
  const bool near_lower =
      !drop.lower_other && g.lower_gap < Scalar(0.05) * len && km1 != Scalar(0);
  const bool near_upper = !drop.upper_other && g.upper_gap < Scalar(0.05) * len;
  if (near_lower || near_upper) {
    const int half = std::max(kDensityHalfPoints, n_nodes / 2);
    const auto unit = tanh_sinh<Scalar>(half, 0, 1);
    return std::exp(log_pref) * detail::density_integral_tanh_sinh(g, unit);
  }

  const auto rule = gauss_jacobi<Scalar>(n_nodes, p, q, g.L, g.U);
  const Scalar integral = integrate_1d(
      rule, [&](Scalar, Scalar s, Scalar t) {
        return detail::density_integrand(g, s, t, drop);
      });
  return std::exp(log_pref) * integral;
}

/// E_k(mu, lambda) as the Laplace transform of the density over co(lambda):
///   int int e^{(mu1+mu2-2mu3) x + (mu1-mu2) y} F_k(x, y, lambda) dx dy.
///
/// The support is split along the lines where F_k is not smooth
/// (x = -l1/2, l2, -l2/2, -l3/2 and |y| = |x - l2|); each piece is
/// integrated with nested tanh-sinh rules whose endpoint distances feed the
/// vanishing factors of the inner integrand directly.
template <std::floating_point Scalar>
Scalar dunkl_E_via_density(Scalar k, const Point3<Scalar>& mu,
                           const ChamberPoint<Scalar>& l,
                           int half_points = kDensityHalfPoints,
                           DensityBracket bracket = DensityBracket::kCorrected) {
  if (!(k > Scalar(0))) throw DomainError("k must be positive");
  const Scalar sx = mu(0) + mu(1) - Scalar(2) * mu(2);
  const Scalar dy = mu(0) - mu(1);
  const Scalar l1 = l.l1(), l2 = l.l2(), l3 = l.l3();

  const auto unit = tanh_sinh<Scalar>(half_points, 0, 1);
  const Scalar log_pref = density_log_prefactor(k, l);

  std::vector<Scalar> breaks = {-l1 / Scalar(2), l2, -l2 / Scalar(2),
                                -l3 / Scalar(2)};
  std::sort(breaks.begin(), breaks.end());

  Scalar total = 0;
  for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
    const Scalar xa = breaks[piece], xb = breaks[piece + 1];
    if (!(xa < xb)) continue;
    const Scalar xlen = xb - xa;
    for (Eigen::Index ix = 0; ix < unit.size(); ++ix) {
      const Scalar x_from_a = xlen * unit.from_a(ix);
      const Scalar x_to_b = xlen * unit.to_b(ix);
      if (x_from_a == Scalar(0) || x_to_b == Scalar(0)) continue;
      const Scalar x = xa + x_from_a;
      // Distances to the breakpoints that create kinks, taken from the
      // rule when the breakpoint is an end of this piece.
      auto dist_to = [&](Scalar bp) {
        if (bp == xa) return x_from_a;
        if (bp == xb) return x_to_b;
        return std::abs(x - bp);
      };
      const Scalar A = x - l3;
      const Scalar B = l1 - x;
      const Scalar c = dist_to(l2);
      const Scalar U = std::min(A, B);
      const Scalar upper_gap = Scalar(2) * dist_to(-l2 / Scalar(2));
      const bool upper_is_A = A <= B;
      if (!(c < U)) continue;

      detail::DensityGeometry<Scalar> g{};
      g.k = k;
      g.x = x;
      g.l1 = l1;
      g.l2 = l2;
      g.l3 = l3;
      g.U = U;
      g.upper_is_A = upper_is_A;
      g.upper_gap = upper_gap;
      g.bracket = bracket;

      Scalar x_sum = 0;
      // y pieces: [-U, -c], [-c, c], [c, U]
      const Scalar ylo[3] = {-U, -c, c};
      const Scalar yhi[3] = {-c, c, U};
      for (int yp = 0; yp < 3; ++yp) {
        const Scalar ylen = yhi[yp] - ylo[yp];
        if (!(ylen > Scalar(0))) continue;
        Scalar y_sum = 0;
        for (Eigen::Index iy = 0; iy < unit.size(); ++iy) {
          const Scalar y_from_a = ylen * unit.from_a(iy);
          const Scalar y_to_b = ylen * unit.to_b(iy);
          if (y_from_a == Scalar(0) || y_to_b == Scalar(0)) continue;
          const Scalar y = ylo[yp] + y_from_a;
          g.y = y;
          if (yp == 1) {
            g.lower_is_y = false;
            g.L = c;
            g.lower_gap = y < Scalar(0) ? y_from_a : y_to_b;
          } else {
            g.lower_is_y = true;
            g.lower_gap = yp == 0 ? y_to_b : y_from_a;
            g.L = c + g.lower_gap;
          }
          const Scalar zlen = yp == 0 ? y_from_a : (yp == 2 ? y_to_b : U - c);
          Scalar z_sum = 0;
          for (Eigen::Index iz = 0; iz < unit.size(); ++iz) {
            const Scalar s = zlen * unit.from_a(iz);
            const Scalar t = zlen * unit.to_b(iz);
            if (s == Scalar(0) || t == Scalar(0)) continue;
            z_sum += unit.weights(iz) * detail::density_integrand(g, s, t);
          }
          y_sum += unit.weights(iy) * zlen * z_sum * std::exp(dy * y);
        }
        x_sum += ylen * y_sum;
      }
      total += unit.weights(ix) * xlen * x_sum * std::exp(sx * x);
    }
  }
  if (!std::isfinite(total)) {
    throw EvaluationError("non-finite density integral", 0.0);
  }
  return std::exp(log_pref) * total;
}

}  // namespace dunkl_a2

#endif  // DUNKL_A2_KERNELS_HPP
