#ifndef DUNKL_A2_POLY_HPP
#define DUNKL_A2_POLY_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dunkl_a2 {

using Rational = mpq_class;
using Exponent = std::array<int, 3>;

/// Parses "p/q", an integer, or a finite decimal such as "0.75" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Sparse polynomial in x1, x2, x3 over the rationals. Zero coefficients are
/// never stored.
class RationalPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  RationalPoly() = default;
  RationalPoly(const Rational& c);  // NOLINT: constants convert implicitly
  RationalPoly(long c) : RationalPoly(Rational(c)) {}  // NOLINT

  static RationalPoly monomial(const Exponent& e, const Rational& c = 1);
  static RationalPoly variable(int i);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& c);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend RationalPoly operator*(RationalPoly a, long c) { return a *= Rational(c); }
  friend RationalPoly operator*(long c, RationalPoly a) { return a *= Rational(c); }
  RationalPoly operator-() const;
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.terms_ == b.terms_;
  }

  RationalPoly pow(int n) const;
  RationalPoly derivative(int i) const;
  /// Exchange of the variables x_i and x_j.
  RationalPoly swapped(int i, int j) const;
  /// Image under x -> (x_{perm[0]}, x_{perm[1]}, x_{perm[2]}).
  RationalPoly permuted(const std::array<int, 3>& perm) const;
  /// Exact quotient by (x_i - x_j); throws InternalError on a nonzero
  /// remainder.
  RationalPoly divide_by_difference(int i, int j) const;
  RationalPoly homogeneous_part(int m) const;

  Rational evaluate(const std::array<Rational, 3>& x) const;
  double evaluate(const std::array<double, 3>& x) const;

  std::string to_string() const;

 private:
  Terms terms_;
};

/// Monomials of total degree m in three variables, ordered by decreasing
/// exponent of x1, then of x2.
std::vector<Exponent> monomial_basis(int m);
int monomial_index(const Exponent& e);
inline int basis_size(int m) { return (m + 1) * (m + 2) / 2; }

/// Dense rational matrix in row-major order.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  bool is_symmetric() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Exact inverse by fraction-free Gauss-Jordan elimination on the matrix
/// scaled to integers. Throws InternalError if singular.
RationalMatrix invert_exact(const RationalMatrix& m);

/// Pivots of the exact LDL^T factorization (no pivoting). All positive iff
/// the symmetric matrix is positive definite.
std::vector<Rational> ldl_pivots(const RationalMatrix& m);

}  // namespace dunkl_a2

#endif  // DUNKL_A2_POLY_HPP
