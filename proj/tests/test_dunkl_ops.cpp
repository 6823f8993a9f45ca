#include <cmath>
#include <random>

#include "doctest.h"
#include "dunkl_a2/dunkl_ops.hpp"
#include "dunkl_a2/poly_oracle.hpp"

using namespace dunkl_a2;

TEST_CASE("hand-computed Dunkl operators") {
  const Point3d x(1, 0, -1);
  for (double k : {0.5, 1.0, 2.0}) {
    CHECK(apply_dunkl_T(0, k, [](const Point3d&) { return 1.0; }, x) == doctest::Approx(0.0));
    CHECK(apply_dunkl_T(0, k, [](const Point3d& p) { return p(1); }, x) ==
          doctest::Approx(-k).epsilon(1e-12));
    CHECK(apply_dunkl_T(0, k, [](const Point3d& p) { return p(0); }, x) ==
          doctest::Approx(1 + 2 * k).epsilon(1e-12));
  }
}

TEST_CASE("agreement with exact operators on polynomials") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_real_distribution<double> coord(-1, 1);
  const Rational k(3, 4);
  for (int trial = 0; trial < 4; ++trial) {
    RationalPoly p;
    for (int m = 0; m <= 6; ++m) {
      for (const auto& e : monomial_basis(m)) p.add_term(e, Rational(coef(rng), 5));
    }
    auto f = [&](const Point3d& y) { return p.evaluate(std::array<double, 3>{y(0), y(1), y(2)}); };
    const Point3d x(coord(rng), coord(rng), coord(rng));
    for (int i = 0; i < 3; ++i) {
      const double exact = poly_dunkl_T(i, k, p).evaluate(std::array<double, 3>{x(0), x(1), x(2)});
      CHECK(std::abs(apply_dunkl_T(i, 0.75, f, x) - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("near-diagonal branch") {
  auto f = [](const Point3d& p) { return p(0) * p(0) * p(1) + p(2); };
  const RationalPoly x1 = RationalPoly::variable(0), x2 = RationalPoly::variable(1),
                     x3 = RationalPoly::variable(2);
  const RationalPoly p = x1 * x1 * x2 + x3;
  const Point3d x(0.3, 0.3, -0.2);
  const double exact = poly_dunkl_T(0, Rational(1), p).evaluate(std::array<double, 3>{0.3, 0.3, -0.2});
  CHECK(apply_dunkl_T(0, 1.0, f, x) == doctest::Approx(exact).epsilon(1e-8));
  CHECK_THROWS_AS(apply_dunkl_T(3, 1.0, f, x), DomainError);
}

TEST_CASE("eigenfunction residuals") {
  const auto r = verify_eigen(1.0, Point3d(0.3, 0.1, -0.4), ChamberPoint<double>(1, 0, -1));
  CHECK(r.max() <= 5e-7);
  CHECK(r.sum <= 5e-7);
  const auto d = verify_eigen(0.5, Point3d(0.2, 0.2, -0.4), ChamberPoint<double>(1.5, 0.2, -1.7));
  CHECK(d.max() <= 5e-7);
}

TEST_CASE("lemma operator on constants") {
  const ChamberPoint<double> l(1.5, 0.2, -1.7);
  const Point3d mu(0.1, 0.4, -0.2);
  CHECK(apply_lemma_T(1.0, l, [](const Point3d&) { return 0.0; }, mu) == 0.0);
  CHECK(apply_lemma_T(1.0, l, [](const Point3d&) { return 1.0; }, mu) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const LemmaCoefficients<double> c(l);
  const double den = 1.5 * 1.5 + 0.2 * 0.2 + 1.5 * 0.2;
  CHECK(c.alpha == doctest::Approx((2 * 1.5 + 0.2) / den));
  CHECK(c.beta == doctest::Approx((2 * 0.2 + 1.5) / den));
}

TEST_CASE("nested T_V smoke tests") {
  auto V = [](const Point3d& p) { return vandermonde(p); };
  for (const Rational& k : {Rational(1, 2), Rational(1)}) {
    const double g = gamma_k(k).get_d();
    CHECK(apply_T_V(k.get_d(), V, Point3d(Point3d::Zero())) == doctest::Approx(g).epsilon(1e-4));
  }
  CHECK(std::abs(apply_T_V(1.0, [](const Point3d&) { return 2.0; }, Point3d(0.1, 0.5, -0.3))) <= 1e-6);
  const RationalPoly x1 = RationalPoly::variable(0), x2 = RationalPoly::variable(1),
                     x3 = RationalPoly::variable(2);
  const RationalPoly p = x1 * x2 * x3;
  const Point3d x(0.7, -0.2, 0.45);
  const double exact = poly_T_V(Rational(1, 2), p).evaluate(std::array<double, 3>{x(0), x(1), x(2)});
  const double fd = apply_T_V(0.5, [](const Point3d& y) { return y(0) * y(1) * y(2); }, x);
  CHECK(std::abs(fd - exact) <= 1e-4 * std::max(1.0, std::abs(exact)));
}
