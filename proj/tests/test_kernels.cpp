#include <cmath>

#include "doctest.h"
#include "dunkl_a2/derivation.hpp"
#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/kernels.hpp"
#include "dunkl_a2/poly_oracle.hpp"

using namespace dunkl_a2;

namespace {

const ChamberPoint<double> kLam(1.5, 0.2, -1.7);
const Point3d kMu(0.4, 0.1, -0.5);

// Independent value from the exact series at degree 14 (tail ~1e-11).
constexpr double kOracleHalf = 2.080089039364341;

}  // namespace

TEST_CASE("Vandermonde and chamber validation") {
  CHECK(vandermonde(ChamberPoint<double>(2, 0, -2)) == 16.0);
  CHECK(vandermonde(ChamberPoint<double>(1, 0, -1)) == 2.0);
  CHECK(vandermonde(ChamberPoint<double>(3, -1, -2)) == 20.0);
  CHECK_THROWS_AS(ChamberPoint<double>(1, 0, -0.9), DomainError);
  CHECK_THROWS_AS(ChamberPoint<double>(0, 1, -1), DomainError);
  CHECK_THROWS_AS(ChamberPoint<double>(1, 1, -2), DomainError);
  CHECK_NOTHROW(ChamberPoint<double>(1 + 5e-13, 0, -1));
}

TEST_CASE("weight W_k") {
  const ChamberPoint<double> l(2, 0, -2);
  CHECK(weight_W(1.0, 1.0, -1.0, l) == 1.0);
  CHECK(weight_W(1.0, 0.3, -1.0, kLam) == 1.0);
  CHECK(weight_W(2.0, 1.0, -1.0, l) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(weight_W(0.5, 1.0, -1.0, l) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(weight_W(0.5, 2.0, -1.0, l), DomainError);
  CHECK_THROWS_AS(weight_W(0.5, 1.0, 0.0, l), DomainError);
}

TEST_CASE("normalization at mu = 0") {
  const Point3d zero = Point3d::Zero();
  for (double k : {0.3, 0.5, 1.0, 1.7, 3.0}) {
    for (const auto& l : {ChamberPoint<double>(1, 0, -1), ChamberPoint<double>(2, 0, -2), kLam,
                          ChamberPoint<double>(3, -1, -2)}) {
      CHECK(std::abs(dunkl_E(k, zero, l, 64) - 1) <= 1e-9);
      CHECK(std::abs(gen_bessel_J(k, zero, l, 64) - 1) <= 1e-9);
    }
  }
}

TEST_CASE("E_k against the exact series") {
  CHECK(std::abs(dunkl_E(0.5, kMu, kLam, 64) - kOracleHalf) <= 1e-9);
  const auto o = oracle_E(Rational(3, 4), kMu, kLam.vector(), 14);
  CHECK(std::abs(dunkl_E(0.75, kMu, kLam, 64) - o.value) <= 1e-6);
  const ChamberPoint<double> l(1, 0, -1);
  const Point3d mu(1, 0, -1);
  const auto oj = oracle_J(Rational(1), mu, l.vector(), 12);
  CHECK(std::abs(gen_bessel_J(1.0, mu, l, 64) - oj.value) <= 1e-6);
}

TEST_CASE("J_k is the symmetrization of E_k") {
  for (double k : {0.5, 1.3}) {
    const KernelA2<double> ker(Multiplicity<double>(k), kLam);
    double sum = 0;
    for (const auto& s : kSymmetricGroup) sum += ker.E(s.apply(kMu));
    CHECK(ker.J(kMu) == doctest::Approx(sum / 6).epsilon(1e-8));
  }
}

TEST_CASE("homogeneity and quadrature convergence") {
  for (double k : {0.3, 1.0, 2.5}) {
    for (double c : {0.5, 2.0}) {
      const double a = dunkl_E(k, Point3d(c * kMu), kLam, 64);
      const double b = dunkl_E(k, kMu, kLam.scaled(c), 64);
      CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
    const Point3d mu(1.2, -0.3, -0.6);
    CHECK(dunkl_E(k, mu, kLam, 32) == doctest::Approx(dunkl_E(k, mu, kLam, 64)).epsilon(1e-10));
    CHECK(dunkl_E(k, mu, kLam, 64) > 0);
  }
}

TEST_CASE("invalid k") {
  CHECK_THROWS_AS(dunkl_E(0.0, kMu, kLam, 64), DomainError);
  CHECK_THROWS_AS(gen_bessel_J(-1.0, kMu, kLam, 64), DomainError);
  CHECK_THROWS_WITH_AS(density_F(-1.0, 0.0, 0.0, kLam), "k must be positive", DomainError);
}

TEST_CASE("density vanishes outside the support") {
  const ChamberPoint<double> l(1, 0, -1);
  CHECK(density_F(1.0, 0.2, 0.9, l) == 0.0);
  CHECK(density_F(0.5, 0.9, 0.0, l) == 0.0);
  CHECK(density_F(2.0, -0.6, 0.0, l) == 0.0);
}

TEST_CASE("density at k = 1 against a dense trapezoid") {
  const ChamberPoint<double> l(1, 0, -1);
  const double x = 0.2, y = 0.1;
  const double lo = 0.2, hi = 0.8;
  auto g = [&](double z) {
    const double bracket = 6 * z * z * (y + 1) - 6 * y * (x - 1) * x;
    return bracket * ((-1 - x) * (-1 - x) - z * z) / (z * z);
  };
  const int n = 100000;
  double sum = 0.5 * (g(lo) + g(hi));
  for (int i = 1; i < n; ++i) sum += g(lo + (hi - lo) * i / n);
  const double ref = 0.5 * sum * (hi - lo) / n;  // prefactor G(2)G(3)/V^2 = 1/2
  CHECK(std::abs(density_F(1.0, x, y, l) - ref) <= 1e-7);
}

TEST_CASE("printed bracket differs from the corrected one") {
  const ChamberPoint<double> l(1, 0, -1);
  const double a = density_F(1.0, 0.2, 0.1, l, 64, DensityBracket::kCorrected);
  const double b = density_F(1.0, 0.2, 0.1, l, 64, DensityBracket::kPrinted);
  CHECK(std::abs(a - b) > 1e-3);
}

TEST_CASE("density reproduces E_k") {
  for (double k : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(dunkl_E_via_density(k, Point3d(Point3d::Zero()), kLam) - 1) <= 1e-9);
  }
  const Point3d mu(1, 0, -1);
  CHECK(std::abs(dunkl_E_via_density(1.0, mu, kLam) - dunkl_E(1.0, mu, kLam, 64)) <= 1e-6);
}

TEST_CASE("density is nonnegative on its support") {
  for (double k : {0.5, 1.0, 2.0}) {
    double fmin = 0, fmax = 0;
    for (int i = 0; i < 30; ++i) {
      for (int j = 0; j < 30; ++j) {
        const double x = -0.85 + 1.7 * (i + 0.5) / 30, y = -1.6 + 3.2 * (j + 0.5) / 30;
        const double f = density_F(k, x, y, kLam);
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
      }
    }
    CHECK(fmax > 0);
    CHECK(fmin >= -1e-10 * fmax);
  }
}

TEST_CASE("support of F_k is the convex hull of the orbit") {
  int mismatches = 0, inside = 0;
  for (int i = 0; i < 120; ++i) {
    for (int j = 0; j < 120; ++j) {
      const double x = -1.0 + 2.0 * (i + 0.37) / 120, y = -1.8 + 3.6 * (j + 0.41) / 120;
      const bool a = in_density_support(x, y, kLam);
      if (a != in_orbit_hull(x, y, kLam)) ++mismatches;
      if (a) ++inside;
    }
  }
  CHECK(mismatches == 0);
  CHECK(inside > 1000);
}

TEST_CASE("derivation identities at k = 1/2") {
  const auto rep = verify_derivation_identities(0.5, Point3d(1, 0, -1), ChamberPoint<double>(2, 0, -2),
                                                64, false);
  const auto* e = rep.find("(m1-m2) J_{k+1} = (4k+2) G0 int e J' W_{k+1}");
  REQUIRE(e != nullptr);
  CHECK(e->residual <= 1e-8);
  CHECK(rep.all_passed());
}
