#include <random>
#include <sstream>

#include "doctest.h"
#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/poly_oracle.hpp"

using namespace dunkl_a2;

namespace {
const RationalPoly X1 = RationalPoly::variable(0), X2 = RationalPoly::variable(1),
                   X3 = RationalPoly::variable(2);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("0.3") == Rational(3, 10));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0.12") == Rational(3, 25));
  CHECK(parse_rational("-0.08") == Rational(-2, 25));
  CHECK(parse_rational("010/09") == Rational(10, 9));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}

TEST_CASE("exact Dunkl operators") {
  const Rational k(2, 3);
  CHECK(poly_dunkl_T(0, k, X2) == RationalPoly(-k));
  CHECK(poly_dunkl_T(0, k, X1) == RationalPoly(1 + 2 * k));
  CHECK(poly_dunkl_T(0, k, RationalPoly(1)).is_zero());
}

TEST_CASE("Dunkl operators commute") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-6, 6);
  const Rational k(1, 3);
  for (int trial = 0; trial < 3; ++trial) {
    RationalPoly p;
    for (int m = 0; m <= 5; ++m) {
      for (const auto& e : monomial_basis(m)) p.add_term(e, Rational(coef(rng)));
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        CHECK(poly_dunkl_T(i, k, poly_dunkl_T(j, k, p)) == poly_dunkl_T(j, k, poly_dunkl_T(i, k, p)));
      }
    }
  }
}

TEST_CASE("Fischer Gram matrices") {
  CHECK(fischer_gram(Rational(1, 2), 0) == RationalMatrix::identity(1));
  const Rational k(3, 7);
  const auto g1 = fischer_gram(k, 1);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(g1(i, j) == (i == j ? Rational(1 + 2 * k) : Rational(-k)));
  }
  const auto g2 = fischer_gram(Rational(0), 2);
  const auto basis = monomial_basis(2);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Rational expect = 0;
      if (i == j) {
        expect = 1;
        for (int a : basis[i]) expect *= (a == 2 ? 2 : 1);
      }
      CHECK(g2(i, j) == expect);
    }
  }
  for (const Rational& kk : {Rational(1, 4), Rational(1, 2), Rational(1), Rational(3)}) {
    for (int m = 0; m <= 8; ++m) {
      const auto g = fischer_gram(kk, m);
      CHECK(g.is_symmetric());
      for (const auto& piv : ldl_pivots(g)) CHECK(piv > 0);
    }
  }
}

TEST_CASE("kernel series") {
  const Rational k(1, 2);
  const auto s = kernel_series(k, 8);
  CHECK(verify_kernel_recurrence(s));
  // Degree 1 on the zero-sum plane: <x, y> / (1 + 3k).
  const Eigen::Vector3d x(0.3, -0.7, 1.1), y(0.5, 0.25, -0.75);
  CHECK(s.evaluate_component(1, x, y) == doctest::Approx(x.dot(y) / 2.5).epsilon(1e-14));
  // k = 0 gives the exponential series.
  const auto e = kernel_series(Rational(0), 3);
  double fact = 1;
  for (int m = 0; m <= 3; ++m) {
    if (m > 0) fact *= m;
    CHECK(e.evaluate_component(m, x, y) == doctest::Approx(std::pow(x.dot(y), m) / fact).epsilon(1e-14));
  }
  // Euler-step and Gram-inverse constructions agree exactly.
  const auto g = kernel_series(Rational(2), 6, SeriesMethod::kGramInverse);
  const auto u = kernel_series(Rational(2), 6, SeriesMethod::kEuler);
  for (int m = 0; m <= 6; ++m) CHECK(g.component(m) == u.component(m));
}

TEST_CASE("series text round trip") {
  const auto s = kernel_series(Rational(3, 5), 4);
  std::stringstream ss;
  s.write(ss);
  const auto r = KernelSeries::read(ss);
  CHECK(r.k() == s.k());
  for (int m = 0; m <= 4; ++m) CHECK(r.component(m) == s.component(m));
}

TEST_CASE("oracle values") {
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero(), lam(1, 0, -1), mu(0.4, 0.1, -0.5);
  CHECK(oracle_E(Rational(1, 2), zero, lam, 6).value == 1.0);
  CHECK(oracle_J(Rational(1, 2), zero, lam, 6).value == doctest::Approx(1.0).epsilon(1e-15));
  const auto s = kernel_series(Rational(1), 10);
  CHECK(oracle_E(s, mu, lam).value == doctest::Approx(oracle_E(s, lam, mu).value).epsilon(1e-15));
  const Eigen::Vector3d pm(mu(2), mu(0), mu(1));
  CHECK(oracle_J(s, mu, lam).value == doctest::Approx(oracle_J(s, pm, lam).value).epsilon(1e-15));
  const auto o = oracle_E(Rational(1, 2), mu, Eigen::Vector3d(1.5, 0.2, -1.7), 14);
  CHECK(o.value == doctest::Approx(2.080089039364341).epsilon(1e-13));
  CHECK(o.tail_estimate < 1e-9);
  CHECK(o.tail_bound < 1e-6);
  const auto lo = oracle_E(kernel_series(Rational(1, 2), 14), mu, Eigen::Vector3d(1.5, 0.2, -1.7), 8);
  CHECK(std::abs(o.value - lo.value) <= lo.tail_bound);
}

TEST_CASE("gamma_k") {
  CHECK(gamma_k(Rational(0)) == 12);
  CHECK(gamma_k(Rational(1, 2)) == 105);
  CHECK(gamma_k(Rational(1)) == 6 * 3 * 4 * 5);
  CHECK(antisymmetrization_constant(Rational(1)) == Rational(1, 60));
  CHECK(gamma_closed_form(Rational(1)) == Rational(1, 60));
  const auto rep = gamma_report(Rational(1, 2));
  CHECK(rep.outcome == GammaReport::Outcome::kScaledReciprocal);
  CHECK(rep.product == 6);
}

TEST_CASE("T_V(V J_{k+1}) = gamma_k J_k exactly") {
  for (const Rational& k : {Rational(1, 2), Rational(0)}) {
    const auto r = verify_opdam(k, 6);
    CHECK(r.success);
    CHECK(r.checked_through == 3);
  }
}

TEST_CASE("exact polynomial identities") {
  for (const auto& list : {check_moment_factorizations(), check_w_reductions(),
                           check_final_simplifications(), check_density_bracket(),
                           check_vandermonde_dunkl(Rational(1, 2))}) {
    REQUIRE(!list.empty());
    for (const auto& c : list) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.holds);
    }
  }
}
