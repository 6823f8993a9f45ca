#include "doctest.h"
#include "dunkl_a2/derivation.hpp"
#include "dunkl_a2/suites.hpp"

using namespace dunkl_a2;

TEST_CASE("all integral displays hold in corrected form") {
  for (double k : {0.5, 0.75, 2.0}) {
    const auto rep = verify_derivation_identities(k, Point3d(0.4, 0.1, -0.5),
                                                  ChamberPoint<double>(1.5, 0.2, -1.7), 64, false);
    for (const auto& e : rep.entries) {
      INFO(e.name << " residual " << e.residual);
      CHECK(e.passed());
    }
  }
}

TEST_CASE("displays that fail as written are flagged") {
  const auto rep = verify_derivation_identities(1.0, Point3d(1, 0, -1),
                                                ChamberPoint<double>(2, 0, -2), 64, false);
  int flagged = 0;
  for (const auto& e : rep.entries) {
    if (e.printed_differs) {
      ++flagged;
      CHECK(e.printed_residual > 1e-3);
      CHECK(!e.note.empty());
    }
  }
  CHECK(flagged == 3);
}

TEST_CASE("exact entries are included") {
  const auto rep = verify_derivation_identities(0.5, Point3d(1, 0, -1),
                                                ChamberPoint<double>(2, 0, -2), 64, true);
  int exact = 0;
  for (const auto& e : rep.entries) {
    if (e.method == CheckMethod::kExact) {
      ++exact;
      CHECK(e.residual == 0.0);
    }
  }
  CHECK(exact > 10);
  CHECK(rep.all_passed());
}

TEST_CASE("suite reports keep the worst residual") {
  SuiteReport r("x");
  r.record("a", 1e-9, 1e-8, "first");
  r.record("a", 5e-9, 1e-8, "second");
  r.record("a", 2e-9, 1e-8, "third");
  REQUIRE(r.lines().size() == 1);
  CHECK(r.lines()[0].residual == 5e-9);
  CHECK(r.lines()[0].worst_case == "second");
  CHECK(r.passed());
  r.record("b", 1.0, 0.0);
  CHECK(!r.passed());
  CHECK(r.first_failure()->name == "b");
}

TEST_CASE("bessel and derivation suites pass") {
  SuiteConfig cfg;
  CHECK(run_suite("bessel", cfg).passed());
  cfg.k = Rational(1, 2);
  CHECK(run_suite("derivation", cfg).passed());
  CHECK_THROWS_AS(run_suite("nope", cfg), DomainError);
}
