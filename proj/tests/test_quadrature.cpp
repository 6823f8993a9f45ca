#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/quadrature.hpp"

using namespace dunkl_a2;

namespace {

// int_0^L (L-t)^p t^q t^m dt = L^{p+q+m+1} B(p+1, q+m+1).
double jacobi_moment(double p, double q, double L, int m) {
  return std::pow(L, p + q + m + 1) *
         std::exp(std::lgamma(p + 1) + std::lgamma(q + m + 1) - std::lgamma(p + q + m + 2));
}

}  // namespace

TEST_CASE("one-point Legendre is the midpoint rule") {
  const auto r = gauss_jacobi(1, 0.0, 0.0, -1.0, 1.0);
  REQUIRE(r.size() == 1);
  CHECK(r.nodes(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.weights(0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("Chebyshev weight mass and moments") {
  const auto r = gauss_jacobi(8, -0.5, -0.5, -1.0, 1.0);
  CHECK(r.weights.sum() == doctest::Approx(std::numbers::pi).epsilon(1e-13));
  CHECK(integrate_1d(r, [](double t) { return t * t; }) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-13));
}

TEST_CASE("exactness through degree 2n-1") {
  for (double p : {-0.7, -0.5, 0.0, 0.5, 2.0}) {
    for (double q : {-0.7, -0.5, 0.0, 0.5, 2.0}) {
      const int n = 10;
      const auto r = gauss_jacobi(n, p, q, 0.0, 1.7);
      CHECK(r.weights.sum() == doctest::Approx(jacobi_moment(p, q, 1.7, 0)).epsilon(1e-13));
      for (int m = 0; m <= 2 * n - 1; ++m) {
        const double got = integrate_1d(r, [m](double t) { return std::pow(t, m); });
        const double ref = jacobi_moment(p, q, 1.7, m);
        CHECK(std::abs(got - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
      }
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        CHECK(r.nodes(i) > r.a);
        CHECK(r.nodes(i) < r.b);
        CHECK(r.weights(i) > 0);
        CHECK(r.from_a(i) == doctest::Approx(r.nodes(i) - r.a).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("k = 1/2 Jacobi moment of t^2") {
  // On [-1, 1]: int (1-t^2)^{-1/2} t^2 dt = B(3/2, 1/2) = pi/2.
  const auto r = gauss_jacobi(16, -0.5, -0.5, -1.0, 1.0);
  const double got = integrate_1d(r, [](double t) { return t * t; });
  CHECK(std::abs(got - std::numbers::pi / 2) <= 1e-12);
}

TEST_CASE("symmetric rule for p = q on a symmetric interval") {
  const auto r = gauss_jacobi(9, 0.3, 0.3, -2.0, 2.0);
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    const Eigen::Index j = r.size() - 1 - i;
    CHECK(r.nodes(i) == doctest::Approx(-r.nodes(j)).epsilon(1e-13));
    CHECK(r.weights(i) == doctest::Approx(r.weights(j)).epsilon(1e-12));
  }
}

TEST_CASE("integrate_1d examples") {
  CHECK(integrate_1d(gauss_legendre(4, 0.0, 1.0), [](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const double z = 1.7;
  CHECK(integrate_1d(gauss_jacobi(20, 0.0, 0.0, -1.0, 1.0), [z](double t) { return std::exp(z * t); }) ==
        doctest::Approx(2 * std::sinh(z) / z).epsilon(1e-14));
}

TEST_CASE("non-finite integrand reports the node") {
  const auto r = gauss_legendre(3, 0.0, 1.0);
  CHECK_THROWS_AS(integrate_1d(r, [](double t) { return t > 0.5 ? std::nan("") : 1.0; }),
                  EvaluationError);
}

TEST_CASE("product rules") {
  const auto one = gauss_legendre(1, 0.0, 1.0);
  CHECK(product_rule_2d(one, one, [](double, double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-15));
  const auto eight = gauss_legendre(8, 0.0, 1.0);
  CHECK(product_rule_2d(eight, eight, [](double x, double y) { return x * y; }) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // Rules matching the weight factors at k = 1 on lambda = (2, 0, -2).
  const auto r1 = gauss_jacobi(6, 0.0, 0.0, 0.0, 2.0), r2 = gauss_jacobi(6, 0.0, 0.0, -2.0, 0.0);
  CHECK(product_rule_2d(r1, r2, [](double, double) { return 1.0; }) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  const auto r = tanh_sinh(40, 0.0, 1.0);
  double sum = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i) sum += r.weights(i) / std::sqrt(r.from_a(i));
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(gauss_jacobi(4, -1.0, 0.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi(4, 0.0, -1.5, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi(4, 0.0, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0, 0.0, 1.0), DomainError);
}
