#ifndef DUNKL_A2_TYPES_HPP
#define DUNKL_A2_TYPES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <sstream>

#include <Eigen/Core>

#include "dunkl_a2/errors.hpp"

namespace dunkl_a2 {

template <std::floating_point Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;

using Point3d = Point3<double>;

/// Multiplicity parameter k > 0.
template <std::floating_point Scalar>
class Multiplicity {
 public:
  explicit Multiplicity(Scalar k) : k_(k) {
    if (!(k > Scalar(0)) || !std::isfinite(k)) {
      throw DomainError("k must be positive");
    }
  }

  Scalar value() const { return k_; }
  operator Scalar() const { return k_; }

 private:
  Scalar k_;
};

/// Spectral parameter: lambda in the zero-sum plane with
/// lambda_3 < lambda_2 < lambda_1.
template <std::floating_point Scalar>
class ChamberPoint {
 public:
  static constexpr double kDefaultWallTolerance = 1e-9;

  explicit ChamberPoint(const Point3<Scalar>& lambda,
                        Scalar wall_tolerance = Scalar(kDefaultWallTolerance))
      : lambda_(lambda) {
    const Scalar norm = lambda.cwiseAbs().maxCoeff();
    if (!lambda.allFinite()) {
      throw DomainError("lambda must be finite");
    }
    const Scalar sum = lambda.sum();
    if (std::abs(sum) > Scalar(1e-12) * std::max(norm, Scalar(1))) {
      std::ostringstream os;
      os << "lambda must lie in the plane x+y+z=0 (sum = " << double(sum)
         << ")";
      throw DomainError(os.str());
    }
    const Scalar eps = wall_tolerance * std::max(norm, Scalar(1e-300));
    if (!(lambda(0) - lambda(1) > eps) || !(lambda(1) - lambda(2) > eps)) {
      throw DomainError(
          "lambda must satisfy lambda3 < lambda2 < lambda1 (open Weyl "
          "chamber)");
    }
  }

  ChamberPoint(Scalar l1, Scalar l2, Scalar l3)
      : ChamberPoint(Point3<Scalar>(l1, l2, l3)) {}

  const Point3<Scalar>& vector() const { return lambda_; }
  Scalar operator[](int i) const { return lambda_(i); }
  Scalar l1() const { return lambda_(0); }
  Scalar l2() const { return lambda_(1); }
  Scalar l3() const { return lambda_(2); }

  ChamberPoint scaled(Scalar c) const { return ChamberPoint(c * lambda_); }

 private:
  Point3<Scalar> lambda_;
};

/// V(x) = (x1 - x2)(x1 - x3)(x2 - x3).
template <typename Derived>
typename Derived::Scalar vandermonde(const Eigen::MatrixBase<Derived>& x) {
  return (x(0) - x(1)) * (x(0) - x(2)) * (x(1) - x(2));
}

template <std::floating_point Scalar>
Scalar vandermonde(const ChamberPoint<Scalar>& lambda) {
  return vandermonde(lambda.vector());
}

/// V(lambda), a(lambda) = l1 l2 + l1 l3 + l2 l3, b(lambda) = -l1 l2 l3.
template <std::floating_point Scalar>
struct ChamberInvariants {
  Scalar V;
  Scalar a;
  Scalar b;

  explicit ChamberInvariants(const ChamberPoint<Scalar>& l)
      : V(vandermonde(l)),
        a(l.l1() * l.l2() + l.l1() * l.l3() + l.l2() * l.l3()),
        b(-l.l1() * l.l2() * l.l3()) {}
};

/// Permutation of three coordinates; (sigma . x)_i = x_{perm[i]}.
struct Permutation3 {
  std::array<int, 3> perm;
  int sign;

  template <typename Derived>
  auto apply(const Eigen::MatrixBase<Derived>& x) const {
    using S = typename Derived::Scalar;
    return Point3<S>(x(perm[0]), x(perm[1]), x(perm[2]));
  }
};

inline constexpr std::array<Permutation3, 6> kSymmetricGroup = {{
    {{0, 1, 2}, +1},
    {{1, 2, 0}, +1},
    {{2, 0, 1}, +1},
    {{1, 0, 2}, -1},
    {{0, 2, 1}, -1},
    {{2, 1, 0}, -1},
}};

}  // namespace dunkl_a2

#endif  // DUNKL_A2_TYPES_HPP
