#ifndef DUNKL_A2_POLY_ORACLE_HPP
#define DUNKL_A2_POLY_ORACLE_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dunkl_a2/poly.hpp"

namespace dunkl_a2 {

/// T_i p for i in {0, 1, 2}: d/dx_i + k sum_{j != i} (1 - s_ij)/(x_i - x_j),
/// with exact division.
RationalPoly poly_dunkl_T(int i, const Rational& k, const RationalPoly& p);

/// T_V = (T_1 - T_2)(T_2 - T_3)(T_1 - T_3).
RationalPoly poly_T_V(const Rational& k, const RationalPoly& p);

/// (x1 - x2)(x1 - x3)(x2 - x3).
RationalPoly vandermonde_poly();

/// Matrix of T_i restricted to degree-m monomials: rows index the degree
/// m-1 basis, columns the degree m basis.
RationalMatrix dunkl_action_matrix(int i, const Rational& k, int m);

/// Fischer Gram matrix G_{ab} = (T^a x^b)(0) over the degree-m monomials.
RationalMatrix fischer_gram(const Rational& k, int m);

/// Homogeneous components E_m(x, y) = sum_{a,b} C_m(a, b) x^a y^b of the
/// Dunkl kernel, with C_m the inverse Fischer Gram matrix.
class KernelSeries {
 public:
  KernelSeries(Rational k, std::vector<RationalMatrix> components);

  const Rational& k() const { return k_; }
  int max_degree() const { return int(components_.size()) - 1; }
  const RationalMatrix& component(int m) const { return components_.at(m); }

  /// E_m(x, y) in floating point from the exact coefficients.
  double evaluate_component(int m, const Eigen::Vector3d& x, const Eigen::Vector3d& y) const;

  /// Coefficient of y^b in E_m(x, y) as a polynomial in x.
  RationalPoly x_polynomial(int m, const Exponent& b) const;

  /// Text form: a first line "k_num k_den max_degree", then one line per
  /// nonzero coefficient "m a1 a2 a3 b1 b2 b3 num den", integers in base 10
  /// separated by single spaces.
  void write(std::ostream& os) const;
  static KernelSeries read(std::istream& is);

 private:
  Rational k_;
  std::vector<RationalMatrix> components_;
  std::vector<Eigen::MatrixXd> numeric_;
};

/// Exact T_i^{(x)} E_{m+1} = y_i E_m for every i and m < max_degree.
bool verify_kernel_recurrence(const KernelSeries& series);

enum class SeriesMethod {
  /// E_{m+1} = A^{-1}[<x,y> E_m] with A = (m+1) + k sum_{i<j}(1 - s_ij), the
  /// Euler identity sum_i x_i T_i = deg + k sum_{i<j}(1 - s_ij) applied to
  /// the kernel. A is scalar on each S3-isotypic component, so no linear
  /// solve is needed.
  kEuler,
  /// C_m = G_m^{-1} by exact elimination.
  kGramInverse,
};

/// Builds the series through degree M and checks the recurrence; throws
/// InternalError if the check fails. Both methods give the same series.
KernelSeries kernel_series(const Rational& k, int M, SeriesMethod method = SeriesMethod::kEuler);

struct OracleValue {
  double value = 0;
  /// Ratio-test estimate of the omitted tail; +inf when the last terms do
  /// not decrease.
  double tail_estimate = 0;
  /// Rigorous bound on the omitted tail: |E_m(x, y)| <= rho^m / m! with
  /// rho = max_s |<s x, y>|, since E_m(x, .) is a probability average of
  /// <xi, .>^m / m! over xi in the convex hull of the orbit of x.
  double tail_bound = 0;
  std::vector<double> degree_terms;
  bool within(double tol) const { return tail_estimate <= tol; }
};

OracleValue oracle_E(const KernelSeries& series, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda);
OracleValue oracle_E(const Rational& k, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda, int M);
/// Components 0..max_degree only, for truncation studies.
OracleValue oracle_E(const KernelSeries& series, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda, int max_degree);
/// (1/6) sum over permutations of mu.
OracleValue oracle_J(const KernelSeries& series, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda);
OracleValue oracle_J(const Rational& k, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda, int M);

/// Exact T_V(V)(0).
Rational gamma_k(const Rational& k);

/// Constant c_k with sum_s det(s) E_k(s mu, l) = c_k V(mu) V(l) J_{k+1}(mu, l):
/// c_k = 6 / T_V(V)(0) = 1 / ((2k+1)(3k+1)(3k+2)).
Rational antisymmetrization_constant(const Rational& k);

/// 1 / ((2k+1)(3k+1)(3k+2)).
Rational gamma_closed_form(const Rational& k);

struct GammaReport {
  enum class Outcome { kMatch, kReciprocal, kScaledReciprocal, kMismatch };
  Rational k;
  Rational exact;
  Rational closed_form;
  /// exact * closed_form.
  Rational product;
  Outcome outcome = Outcome::kMismatch;
  std::string summary() const;
};

/// Compares T_V(V)(0) with the closed form. A scaled reciprocal means the
/// product is the same constant at k and at the probe values 0, 1/2, 1, 2.
GammaReport gamma_report(const Rational& k);

struct OpdamReport {
  bool success = false;
  int checked_through = -1;
  int first_failing_degree = -1;
  Rational gamma;
};

/// T_V(V(.) J_{k+1}(., y))(x) = gamma_k J_k(x, y), checked exactly for every
/// bi-degree m <= M - 3.
OpdamReport verify_opdam(const Rational& k, int M);

struct ExactCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// Factorizations of (mu1-mu2)(mu1-mu3), (mu1-mu2)(mu2-mu3),
/// (mu1-mu3)(mu2-mu3) and V(mu) through mu1-mu2 and mu1+mu2-2mu3, both as
/// polynomial identities and at random rational points.
std::vector<ExactCheck> check_moment_factorizations(std::uint64_t seed = 1, int n_points = 100);

/// The derivative formulas for W_{k+1} = P^k (P the six-factor product) and
/// the four reductions of the form Op W_{k+1} = k^2 Q W_k, with k symbolic
/// and lambda at random rational points of the plane.
std::vector<ExactCheck> check_w_reductions(std::uint64_t seed = 2, int n_lambda = 8);

/// The two final simplifications of the E_k integrand, including their
/// intermediate expanded forms, at random rational lambda.
std::vector<ExactCheck> check_final_simplifications(std::uint64_t seed = 3, int n_lambda = 8);

/// The two written forms of the density integrand bracket agree on the
/// plane l1 + l2 + l3 = 0.
std::vector<ExactCheck> check_density_bracket(std::uint64_t seed = 4, int n_lambda = 8);

/// T_1(V f) = V d1 f + (2k+1) d1V f for symmetric f, the expansion of d1V,
/// and T_2(V f)(m1, m2, m3) = -T_1(V f)(m2, m1, m3).
std::vector<ExactCheck> check_vandermonde_dunkl(const Rational& k);

}  // namespace dunkl_a2

#endif  // DUNKL_A2_POLY_ORACLE_HPP
