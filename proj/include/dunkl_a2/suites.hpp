#ifndef DUNKL_A2_SUITES_HPP
#define DUNKL_A2_SUITES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl_a2/poly.hpp"

namespace dunkl_a2 {

/// Worst residual seen for one identity across a suite's parameter grid.
struct SuiteLine {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  std::string worst_case;
  bool passed() const { return residual <= tolerance; }
};

class SuiteReport {
 public:
  explicit SuiteReport(std::string suite) : suite_(std::move(suite)) {}

  /// Keeps the largest residual per name; lines stay in first-seen order.
  void record(const std::string& name, double residual, double tolerance,
              const std::string& context = "");
  void append(const SuiteReport& other);
  /// Duplicate notes are dropped.
  void add_note(std::string note);

  const std::string& suite() const { return suite_; }
  const std::vector<SuiteLine>& lines() const { return lines_; }
  const std::vector<std::string>& notes() const { return notes_; }
  bool passed() const;
  const SuiteLine* first_failure() const;

 private:
  std::string suite_;
  std::vector<SuiteLine> lines_;
  std::vector<std::string> notes_;
};

struct SuiteConfig {
  /// Restricts the k grid to one value when set.
  std::optional<Rational> k;
  int quad_order = 64;
  int series_degree = 12;
  /// Tolerance of the symmetrization check.
  double tol = 1e-8;
};

const std::vector<std::string>& suite_names();

SuiteReport run_bessel_suite(const SuiteConfig& cfg);
SuiteReport run_kernels_suite(const SuiteConfig& cfg);
SuiteReport run_eigen_suite(const SuiteConfig& cfg);
SuiteReport run_lemma1_suite(const SuiteConfig& cfg);
SuiteReport run_opdam_suite(const SuiteConfig& cfg);
SuiteReport run_derivation_suite(const SuiteConfig& cfg);

/// Dispatches on a name from suite_names(); "all" concatenates the others.
/// Throws DomainError for unknown names.
SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg);

}  // namespace dunkl_a2

#endif  // DUNKL_A2_SUITES_HPP
