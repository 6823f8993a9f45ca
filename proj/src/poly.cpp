#include "dunkl_a2/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "dunkl_a2/errors.hpp"

namespace dunkl_a2 {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw DomainError("malformed rational: empty");
  auto bad = [&] { return DomainError("malformed rational: '" + std::string(text) + "'"); };
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + i, t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
      mpz_class d(den, 10);
      if (d == 0) throw bad();
      Rational r(mpz_class(strip_plus(num), 10), d);
      r.canonicalize();
      return r;
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
      bool neg = !whole.empty() && whole[0] == '-';
      if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
      if (whole.empty()) whole = "0";
      if (frac.empty() || !is_int(whole) || !std::all_of(frac.begin(), frac.end(), [](unsigned char c) {
            return std::isdigit(c);
          })) {
        throw bad();
      }
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      Rational r(mpz_class(whole + frac, 10), den);
      r.canonicalize();
      return neg ? Rational(-r) : r;
    }
    if (!is_int(s)) throw bad();
    return Rational(mpz_class(strip_plus(s), 10));
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

std::string to_string(const Rational& r) { return r.get_str(); }

RationalPoly::RationalPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Exponent{0, 0, 0}, c);
}

RationalPoly RationalPoly::monomial(const Exponent& e, const Rational& c) {
  RationalPoly p;
  p.add_term(e, c);
  return p;
}

RationalPoly RationalPoly::variable(int i) {
  Exponent e{0, 0, 0};
  e[i] = 1;
  return monomial(e);
}

int RationalPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

Rational RationalPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void RationalPoly::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return r;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) { return *this = *this * o; }

RationalPoly& RationalPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

RationalPoly RationalPoly::pow(int n) const {
  RationalPoly r(1L);
  for (int i = 0; i < n; ++i) r *= *this;
  return r;
}

RationalPoly RationalPoly::derivative(int i) const {
  RationalPoly r;
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    r.add_term(f, c * e[i]);
  }
  return r;
}

RationalPoly RationalPoly::swapped(int i, int j) const {
  RationalPoly r;
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    std::swap(f[i], f[j]);
    r.terms_.emplace(f, c);
  }
  return r;
}

RationalPoly RationalPoly::permuted(const std::array<int, 3>& perm) const {
  RationalPoly r;
  for (const auto& [e, c] : terms_) {
    Exponent f{0, 0, 0};
    for (int i = 0; i < 3; ++i) f[perm[i]] += e[i];
    r.add_term(f, c);
  }
  return r;
}

RationalPoly RationalPoly::divide_by_difference(int i, int j) const {
  // Synthetic division in x_i: c x_i^a R = c x_i^{a-1} R (x_i - x_j)
  //                                        + c x_i^{a-1} x_j R.
  RationalPoly rest = *this;
  RationalPoly quotient;
  while (true) {
    auto lead = rest.terms_.end();
    for (auto it = rest.terms_.begin(); it != rest.terms_.end(); ++it) {
      if (it->first[i] > 0 && (lead == rest.terms_.end() || it->first[i] > lead->first[i])) {
        lead = it;
      }
    }
    if (lead == rest.terms_.end()) break;
    Exponent e = lead->first;
    const Rational c = lead->second;
    rest.terms_.erase(lead);
    --e[i];
    quotient.add_term(e, c);
    ++e[j];
    rest.add_term(e, c);
  }
  if (!rest.is_zero()) {
    throw InternalError("polynomial not divisible by (x_i - x_j)");
  }
  return quotient;
}

RationalPoly RationalPoly::homogeneous_part(int m) const {
  RationalPoly r;
  for (const auto& [e, c] : terms_) {
    if (e[0] + e[1] + e[2] == m) r.terms_.emplace(e, c);
  }
  return r;
}

Rational RationalPoly::evaluate(const std::array<Rational, 3>& x) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < 3; ++i) {
      for (int p = 0; p < e[i]; ++p) t *= x[i];
    }
    sum += t;
  }
  return sum;
}

double RationalPoly::evaluate(const std::array<double, 3>& x) const {
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (int i = 0; i < 3; ++i) {
      for (int p = 0; p < e[i]; ++p) t *= x[i];
    }
    sum += t;
  }
  return sum;
}

std::string RationalPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    const bool unit = e == Exponent{0, 0, 0};
    if (a != 1 || unit) os << a.get_str();
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::vector<Exponent> monomial_basis(int m) {
  std::vector<Exponent> basis;
  basis.reserve(basis_size(m));
  for (int a = m; a >= 0; --a) {
    for (int b = m - a; b >= 0; --b) basis.push_back({a, b, m - a - b});
  }
  return basis;
}

int monomial_index(const Exponent& e) {
  const int m = e[0] + e[1] + e[2];
  // Rows for a = m, m-1, ..., e[0]+1 hold 1, 2, ..., m - e[0] entries.
  const int before = (m - e[0]) * (m - e[0] + 1) / 2;
  return before + (m - e[0] - e[1]);
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw InternalError("matrix shape mismatch");
  RationalMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int l = 0; l < a.cols(); ++l) {
      const Rational& x = a(i, l);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b(l, j) != 0) r(i, j) += x * b(l, j);
      }
    }
  }
  return r;
}

RationalMatrix invert_exact(const RationalMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw InternalError("inverse of a non-square matrix");
  // Scale each row to integers: A = D M with D diagonal, so M^{-1} = A^{-1} D.
  std::vector<mpz_class> scale(n);
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(2 * std::size_t(n)));
  for (int i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < n; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    }
    scale[i] = l;
    for (int j = 0; j < n; ++j) {
      a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }
    a[i][n + i] = 1;
  }
  // Fraction-free Gauss-Jordan: every entry stays an integer minor and the
  // division by the previous pivot is exact.
  mpz_class prev = 1;
  mpz_class t;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) throw InternalError("singular matrix in exact inverse");
      std::swap(a[k], a[swap_row]);
      for (auto& v : a[k]) v = -v;  // keep the determinant sign consistent
    }
    const mpz_class& piv = a[k][k];
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const mpz_class f = a[i][k];
      for (int j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        t = piv * a[i][j];
        if (f != 0 && a[k][j] != 0) t -= f * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = piv;
  }
  // Now the left block is det * I (det = prev) and the right block is
  // det * A^{-1}.
  RationalMatrix inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational v(a[i][n + j] * scale[j], prev);
      v.canonicalize();
      inv(i, j) = v;
    }
  }
  return inv;
}

std::vector<Rational> ldl_pivots(const RationalMatrix& m) {
  const int n = m.rows();
  RationalMatrix a = m;
  std::vector<Rational> pivots;
  pivots.reserve(n);
  for (int k = 0; k < n; ++k) {
    const Rational p = a(k, k);
    pivots.push_back(p);
    if (p == 0) break;
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / p;
      for (int j = k + 1; j < n; ++j) {
        if (a(k, j) != 0) a(i, j) -= f * a(k, j);
      }
    }
  }
  return pivots;
}

}  // namespace dunkl_a2
