#include "dunkl_a2/poly_oracle.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/types.hpp"

namespace dunkl_a2 {

RationalPoly poly_dunkl_T(int i, const Rational& k, const RationalPoly& p) {
  RationalPoly r = p.derivative(i);
  if (k == 0) return r;
  for (int j = 0; j < 3; ++j) {
    if (j == i) continue;
    RationalPoly diff = p - p.swapped(i, j);
    r += k * diff.divide_by_difference(i, j);
  }
  return r;
}

RationalPoly poly_T_V(const Rational& k, const RationalPoly& p) {
  const RationalPoly a = poly_dunkl_T(0, k, p) - poly_dunkl_T(2, k, p);
  const RationalPoly b = poly_dunkl_T(1, k, a) - poly_dunkl_T(2, k, a);
  return poly_dunkl_T(0, k, b) - poly_dunkl_T(1, k, b);
}

RationalPoly vandermonde_poly() {
  const auto x1 = RationalPoly::variable(0), x2 = RationalPoly::variable(1),
             x3 = RationalPoly::variable(2);
  return (x1 - x2) * (x1 - x3) * (x2 - x3);
}

RationalMatrix dunkl_action_matrix(int i, const Rational& k, int m) {
  const auto cols = monomial_basis(m);
  RationalMatrix a(basis_size(m - 1), basis_size(m));
  for (int c = 0; c < int(cols.size()); ++c) {
    const auto image = poly_dunkl_T(i, k, RationalPoly::monomial(cols[c]));
    for (const auto& [e, v] : image.terms()) a(monomial_index(e), c) = v;
  }
  return a;
}

namespace {

// Rows of G_m from rows of G_{m-1}: (T^g x^b)(0) = (T^{g - e_i} T_i x^b)(0).
RationalMatrix next_gram(const RationalMatrix& prev, const std::array<RationalMatrix, 3>& act,
                         int m) {
  const auto rows = monomial_basis(m);
  const int n = basis_size(m), np = basis_size(m - 1);
  // Sparse columns of each action matrix.
  std::array<std::vector<std::vector<std::pair<int, Rational>>>, 3> sparse;
  for (int i = 0; i < 3; ++i) {
    sparse[i].resize(n);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < np; ++r) {
        if (act[i](r, c) != 0) sparse[i][c].emplace_back(r, act[i](r, c));
      }
    }
  }
  RationalMatrix g(n, n);
  for (int r = 0; r < n; ++r) {
    Exponent e = rows[r];
    int i = 0;
    while (e[i] == 0) ++i;
    --e[i];
    const int pr = monomial_index(e);
    for (int c = 0; c < n; ++c) {
      Rational sum = 0;
      for (const auto& [row, v] : sparse[i][c]) {
        if (prev(pr, row) != 0) sum += prev(pr, row) * v;
      }
      g(r, c) = sum;
    }
  }
  return g;
}

std::array<RationalMatrix, 3> action_matrices(const Rational& k, int m) {
  return {dunkl_action_matrix(0, k, m), dunkl_action_matrix(1, k, m),
          dunkl_action_matrix(2, k, m)};
}

bool recurrence_holds(const RationalMatrix& lower, const RationalMatrix& upper,
                      const std::array<RationalMatrix, 3>& act, int m) {
  // act[i] maps degree m+1 to degree m.
  const auto cols = monomial_basis(m + 1);
  for (int i = 0; i < 3; ++i) {
    const RationalMatrix lhs = act[i] * upper;
    for (int r = 0; r < lhs.rows(); ++r) {
      for (int c = 0; c < lhs.cols(); ++c) {
        Exponent b = cols[c];
        Rational rhs = 0;
        if (b[i] > 0) {
          --b[i];
          rhs = lower(r, monomial_index(b));
        }
        if (lhs(r, c) != rhs) return false;
      }
    }
  }
  return true;
}

Eigen::VectorXd monomial_values(int m, const Eigen::Vector3d& x) {
  const auto basis = monomial_basis(m);
  Eigen::VectorXd v(basis.size());
  for (std::size_t t = 0; t < basis.size(); ++t) {
    double p = 1;
    for (int i = 0; i < 3; ++i) p *= std::pow(x(i), basis[t][i]);
    v(Eigen::Index(t)) = p;
  }
  return v;
}

}  // namespace

RationalMatrix fischer_gram(const Rational& k, int m) {
  if (m < 0) throw DomainError("degree must be nonnegative");
  RationalMatrix g = RationalMatrix::identity(1);
  for (int d = 1; d <= m; ++d) g = next_gram(g, action_matrices(k, d), d);
  return g;
}

KernelSeries::KernelSeries(Rational k, std::vector<RationalMatrix> components)
    : k_(std::move(k)), components_(std::move(components)) {
  numeric_.reserve(components_.size());
  for (const auto& c : components_) {
    Eigen::MatrixXd d(c.rows(), c.cols());
    for (int r = 0; r < c.rows(); ++r) {
      for (int s = 0; s < c.cols(); ++s) d(r, s) = c(r, s).get_d();
    }
    numeric_.push_back(std::move(d));
  }
}

double KernelSeries::evaluate_component(int m, const Eigen::Vector3d& x,
                                        const Eigen::Vector3d& y) const {
  return monomial_values(m, x).dot(numeric_.at(m) * monomial_values(m, y));
}

RationalPoly KernelSeries::x_polynomial(int m, const Exponent& b) const {
  const auto rows = monomial_basis(m);
  const int col = monomial_index(b);
  const auto& c = components_.at(m);
  RationalPoly p;
  for (int r = 0; r < c.rows(); ++r) p.add_term(rows[r], c(r, col));
  return p;
}

void KernelSeries::write(std::ostream& os) const {
  os << k_.get_num().get_str() << ' ' << k_.get_den().get_str() << ' ' << max_degree() << '\n';
  for (int m = 0; m <= max_degree(); ++m) {
    const auto basis = monomial_basis(m);
    const auto& c = components_[m];
    for (int r = 0; r < c.rows(); ++r) {
      for (int s = 0; s < c.cols(); ++s) {
        const Rational& v = c(r, s);
        if (v == 0) continue;
        const auto& a = basis[r];
        const auto& b = basis[s];
        os << m << ' ' << a[0] << ' ' << a[1] << ' ' << a[2] << ' ' << b[0] << ' ' << b[1] << ' '
           << b[2] << ' ' << v.get_num().get_str() << ' ' << v.get_den().get_str() << '\n';
      }
    }
  }
}

KernelSeries KernelSeries::read(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw DomainError("kernel series: missing header");
  std::istringstream head(line);
  std::string kn, kd;
  int M = -1;
  if (!(head >> kn >> kd >> M) || M < 0) throw DomainError("kernel series: bad header");
  Rational k{mpz_class(kn, 10), mpz_class(kd, 10)};
  k.canonicalize();
  std::vector<RationalMatrix> comps;
  for (int m = 0; m <= M; ++m) comps.emplace_back(basis_size(m), basis_size(m));
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream in(line);
    int m;
    Exponent a, b;
    std::string num, den;
    if (!(in >> m >> a[0] >> a[1] >> a[2] >> b[0] >> b[1] >> b[2] >> num >> den) || m < 0 ||
        m > M || a[0] + a[1] + a[2] != m || b[0] + b[1] + b[2] != m) {
      throw DomainError("kernel series: bad line '" + line + "'");
    }
    Rational v{mpz_class(num, 10), mpz_class(den, 10)};
    v.canonicalize();
    comps[m](monomial_index(a), monomial_index(b)) = v;
  }
  return KernelSeries(k, std::move(comps));
}

bool verify_kernel_recurrence(const KernelSeries& series) {
  for (int m = 0; m < series.max_degree(); ++m) {
    if (!recurrence_holds(series.component(m), series.component(m + 1),
                          action_matrices(series.k(), m + 1), m)) {
      return false;
    }
  }
  return true;
}

namespace {

// Row permutation induced on degree-m monomials by x -> sigma x.
std::vector<int> permutation_map(int m, const std::array<int, 3>& perm) {
  const auto basis = monomial_basis(m);
  std::vector<int> map(basis.size());
  for (std::size_t t = 0; t < basis.size(); ++t) {
    Exponent f{0, 0, 0};
    for (int i = 0; i < 3; ++i) f[perm[i]] += basis[t][i];
    map[t] = monomial_index(f);
  }
  return map;
}

RationalMatrix euler_step(const RationalMatrix& c, const Rational& k, int m) {
  // B = <x, y> E_m as a degree m+1 coefficient matrix.
  const auto lower = monomial_basis(m);
  const int n = basis_size(m + 1);
  RationalMatrix b(n, n);
  for (int r = 0; r < c.rows(); ++r) {
    for (int s = 0; s < c.cols(); ++s) {
      if (c(r, s) == 0) continue;
      for (int i = 0; i < 3; ++i) {
        Exponent a = lower[r], e = lower[s];
        ++a[i];
        ++e[i];
        b(monomial_index(a), monomial_index(e)) += c(r, s);
      }
    }
  }
  // A^{-1} = P_std/(m+1+3k) + P_triv/(m+1) + P_sign/(m+1+6k), with
  // P_std = 1 - P_triv - P_sign.
  const Rational d = m + 1;
  const Rational inv_std = 1 / (d + 3 * k);
  const Rational w_triv = (1 / d - inv_std) / 6;
  const Rational w_sign = (1 / (d + 6 * k) - inv_std) / 6;
  RationalMatrix out(n, n);
  for (const auto& sigma : kSymmetricGroup) {
    const auto map = permutation_map(m + 1, sigma.perm);
    const Rational w = w_triv + (sigma.sign > 0 ? w_sign : Rational(-w_sign));
    if (w == 0) continue;
    for (int r = 0; r < n; ++r) {
      for (int s = 0; s < n; ++s) {
        if (b(r, s) != 0) out(map[r], s) += w * b(r, s);
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      if (b(r, s) != 0) out(r, s) += inv_std * b(r, s);
    }
  }
  return out;
}

}  // namespace

KernelSeries kernel_series(const Rational& k, int M, SeriesMethod method) {
  if (M < 0) throw DomainError("series degree must be nonnegative");
  if (k < 0) throw DomainError("k must be nonnegative");
  std::vector<RationalMatrix> comps;
  RationalMatrix g = RationalMatrix::identity(1);
  comps.push_back(g);
  for (int d = 1; d <= M; ++d) {
    const auto act = action_matrices(k, d);
    if (method == SeriesMethod::kGramInverse) {
      g = next_gram(g, act, d);
      comps.push_back(invert_exact(g));
    } else {
      comps.push_back(euler_step(comps.back(), k, d - 1));
    }
    if (!recurrence_holds(comps[d - 1], comps[d], act, d - 1)) {
      throw InternalError("kernel series recurrence failed at degree " + std::to_string(d));
    }
  }
  return KernelSeries(k, std::move(comps));
}

namespace {

// sum_{m > M} rho^m / m!, bounded by its first term times a geometric
// series once rho < M + 2.
double exponential_tail(double rho, int M) {
  double term = 1;
  for (int m = 1; m <= M + 1; ++m) term *= rho / m;
  const double q = rho / (M + 2);
  return q < 1 ? term / (1 - q) : std::numeric_limits<double>::infinity();
}

// max over permutations of |<s mu, lambda>|.
double orbit_pairing(const Eigen::Vector3d& mu, const Eigen::Vector3d& lambda) {
  double rho = 0;
  for (const auto& s : kSymmetricGroup) rho = std::max(rho, std::abs(s.apply(mu).dot(lambda)));
  return rho;
}

OracleValue sum_terms(std::vector<double> terms, double rho) {
  OracleValue out;
  out.tail_bound = exponential_tail(rho, int(terms.size()) - 1);
  for (double t : terms) out.value += t;
  // Ratio test on the last two nonzero terms.
  double last = 0, before = 0;
  int seen = 0;
  for (auto it = terms.rbegin(); it != terms.rend() && seen < 2; ++it) {
    if (*it == 0) continue;
    (seen == 0 ? last : before) = std::abs(*it);
    ++seen;
  }
  if (seen == 0) {
    out.tail_estimate = 0;
  } else if (seen == 1) {
    out.tail_estimate = terms.size() > 1 ? last : 0;
  } else {
    const double r = last / before;
    out.tail_estimate =
        r < 1 ? last * r / (1 - r) : std::numeric_limits<double>::infinity();
  }
  out.degree_terms = std::move(terms);
  return out;
}

}  // namespace

OracleValue oracle_E(const KernelSeries& series, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda) {
  std::vector<double> terms;
  for (int m = 0; m <= series.max_degree(); ++m) {
    terms.push_back(series.evaluate_component(m, mu, lambda));
  }
  return sum_terms(std::move(terms), orbit_pairing(mu, lambda));
}

OracleValue oracle_E(const KernelSeries& series, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda, int max_degree) {
  std::vector<double> terms;
  for (int m = 0; m <= std::min(max_degree, series.max_degree()); ++m) {
    terms.push_back(series.evaluate_component(m, mu, lambda));
  }
  return sum_terms(std::move(terms), orbit_pairing(mu, lambda));
}

OracleValue oracle_E(const Rational& k, const Eigen::Vector3d& mu, const Eigen::Vector3d& lambda,
                     int M) {
  return oracle_E(kernel_series(k, M), mu, lambda);
}

OracleValue oracle_J(const KernelSeries& series, const Eigen::Vector3d& mu,
                     const Eigen::Vector3d& lambda) {
  std::vector<double> terms(series.max_degree() + 1, 0.0);
  for (const auto& s : kSymmetricGroup) {
    const Eigen::Vector3d smu = s.apply(mu);
    for (int m = 0; m <= series.max_degree(); ++m) {
      terms[m] += series.evaluate_component(m, smu, lambda) / 6.0;
    }
  }
  return sum_terms(std::move(terms), orbit_pairing(mu, lambda));
}

OracleValue oracle_J(const Rational& k, const Eigen::Vector3d& mu, const Eigen::Vector3d& lambda,
                     int M) {
  return oracle_J(kernel_series(k, M), mu, lambda);
}

Rational gamma_k(const Rational& k) {
  return poly_T_V(k, vandermonde_poly()).coeff({0, 0, 0});
}

Rational gamma_closed_form(const Rational& k) {
  return 1 / ((2 * k + 1) * (3 * k + 1) * (3 * k + 2));
}

Rational antisymmetrization_constant(const Rational& k) { return 6 / gamma_k(k); }

std::string GammaReport::summary() const {
  std::ostringstream os;
  os << "k=" << k.get_str() << " T_V(V)(0)=" << exact.get_str()
     << " closed_form=" << closed_form.get_str() << " product=" << product.get_str()
     << " outcome=";
  switch (outcome) {
    case Outcome::kMatch: os << "match"; break;
    case Outcome::kReciprocal: os << "reciprocal-match"; break;
    case Outcome::kScaledReciprocal:
      os << "scaled-reciprocal (T_V(V)(0) = " << product.get_str() << " / closed_form)";
      break;
    case Outcome::kMismatch: os << "mismatch"; break;
  }
  return os.str();
}

GammaReport gamma_report(const Rational& k) {
  GammaReport r;
  r.k = k;
  r.exact = gamma_k(k);
  r.closed_form = gamma_closed_form(k);
  r.product = r.exact * r.closed_form;
  if (r.exact == r.closed_form) {
    r.outcome = GammaReport::Outcome::kMatch;
  } else if (r.product == 1) {
    r.outcome = GammaReport::Outcome::kReciprocal;
  } else {
    bool constant = true;
    for (const Rational& probe : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
      if (gamma_k(probe) * gamma_closed_form(probe) != r.product) constant = false;
    }
    r.outcome = constant ? GammaReport::Outcome::kScaledReciprocal
                         : GammaReport::Outcome::kMismatch;
  }
  return r;
}

namespace {

RationalPoly symmetrized_x_polynomial(const KernelSeries& s, int m, const Exponent& b) {
  const RationalPoly p = s.x_polynomial(m, b);
  RationalPoly sum;
  for (const auto& sigma : kSymmetricGroup) sum += p.permuted(sigma.perm);
  return sum * Rational(1, 6);
}

}  // namespace

OpdamReport verify_opdam(const Rational& k, int M) {
  if (M < 3) throw DomainError("verify_opdam needs M >= 3");
  OpdamReport rep;
  rep.gamma = gamma_k(k);
  const int top = M - 3;
  const auto upper = kernel_series(k + 1, top);
  const auto lower = kernel_series(k, top);
  const RationalPoly V = vandermonde_poly();
  for (int m = 0; m <= top; ++m) {
    for (const auto& b : monomial_basis(m)) {
      const RationalPoly lhs = poly_T_V(k, V * symmetrized_x_polynomial(upper, m, b));
      const RationalPoly rhs = rep.gamma * symmetrized_x_polynomial(lower, m, b);
      if (!(lhs == rhs)) {
        rep.first_failing_degree = m;
        return rep;
      }
    }
    rep.checked_through = m;
  }
  rep.success = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Exact identity checks.

namespace {

class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : gen_(seed) {}
  Rational operator()() {
    std::uniform_int_distribution<long> num(-60, 60), den(1, 24);
    Rational r(num(gen_), den(gen_));
    r.canonicalize();
    return r;
  }
  /// l1 > l2 > l3 with l3 = -l1 - l2.
  std::array<Rational, 3> chamber_point() {
    while (true) {
      const Rational a = (*this)(), b = (*this)();
      const Rational c = -a - b;
      std::array<Rational, 3> l{a, b, c};
      std::sort(l.begin(), l.end(), [](const Rational& x, const Rational& y) { return x > y; });
      if (l[0] > l[1] && l[1] > l[2]) return l;
    }
  }

 private:
  std::mt19937_64 gen_;
};

ExactCheck poly_check(std::string name, const RationalPoly& lhs, const RationalPoly& rhs) {
  ExactCheck c{std::move(name), lhs == rhs, ""};
  if (!c.holds) c.detail = "difference " + (lhs - rhs).to_string();
  return c;
}

std::string lambda_text(const std::array<Rational, 3>& l) {
  return "(" + l[0].get_str() + ", " + l[1].get_str() + ", " + l[2].get_str() + ")";
}

// Folds per-lambda results into one check per name.
class CheckCollector {
 public:
  void add(const std::string& name, const RationalPoly& lhs, const RationalPoly& rhs,
           const std::array<Rational, 3>& l) {
    auto [it, fresh] = index_.emplace(name, checks_.size());
    if (fresh) checks_.push_back({name, true, ""});
    auto& c = checks_[it->second];
    if (c.holds && !(lhs == rhs)) {
      c.holds = false;
      c.detail = "fails at lambda=" + lambda_text(l) + ": difference " + (lhs - rhs).to_string();
    }
  }
  std::vector<ExactCheck> take() { return std::move(checks_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<ExactCheck> checks_;
};

}  // namespace

std::vector<ExactCheck> check_moment_factorizations(std::uint64_t seed, int n_points) {
  const auto m1 = RationalPoly::variable(0), m2 = RationalPoly::variable(1),
             m3 = RationalPoly::variable(2);
  const RationalPoly d = m1 - m2;
  const RationalPoly s = m1 + m2 - 2 * m3;
  struct Item {
    std::string name;
    RationalPoly lhs, rhs;
  };
  const Rational half(1, 2), quarter(1, 4);
  const std::vector<Item> items = {
      {"(m1-m2)(m1-m3) = ((m1-m2)(m1+m2-2m3) + (m1-m2)^2)/2", d * (m1 - m3),
       half * (d * s + d * d)},
      {"(m1-m2)(m2-m3) = ((m1-m2)(m1+m2-2m3) - (m1-m2)^2)/2", d * (m2 - m3),
       half * (d * s - d * d)},
      {"(m1-m3)(m2-m3) = ((m1+m2-2m3)^2 - (m1-m2)^2)/4", (m1 - m3) * (m2 - m3),
       quarter * (s * s - d * d)},
      {"V(m) = ((m1+m2-2m3)^2 (m1-m2) - (m1-m2)^3)/4", vandermonde_poly(),
       quarter * (s * s * d - d.pow(3))},
  };
  RationalSampler sample(seed);
  std::vector<ExactCheck> out;
  for (const auto& it : items) {
    ExactCheck c = poly_check(it.name, it.lhs, it.rhs);
    int bad = 0;
    for (int p = 0; p < n_points; ++p) {
      const std::array<Rational, 3> x{sample(), sample(), sample()};
      if (it.lhs.evaluate(x) != it.rhs.evaluate(x)) ++bad;
    }
    if (bad > 0) {
      c.holds = false;
      c.detail += " (" + std::to_string(bad) + " random points differ)";
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// sum_j q[j] P^{k-j}, polynomials in (nu1, nu2, k) = (x1, x2, x3).
struct PowerForm {
  std::map<int, RationalPoly> q;

  PowerForm derivative(int i, const RationalPoly& P) const {
    PowerForm r;
    const RationalPoly dP = P.derivative(i);
    const RationalPoly kvar = RationalPoly::variable(2);
    for (const auto& [j, c] : q) {
      r.q[j] += c.derivative(i);
      r.q[j + 1] += c * (kvar - Rational(j)) * dP;
    }
    return r;
  }
  PowerForm operator-(const PowerForm& o) const {
    PowerForm r = *this;
    for (const auto& [j, c] : o.q) r.q[j] -= c;
    return r;
  }
  PowerForm operator+(const PowerForm& o) const {
    PowerForm r = *this;
    for (const auto& [j, c] : o.q) r.q[j] += c;
    return r;
  }
  /// Numerator over the common power P^{k-J}.
  RationalPoly at_power(int J, const RationalPoly& P) const {
    RationalPoly sum;
    for (const auto& [j, c] : q) {
      if (j > J) throw InternalError("power form deeper than requested");
      sum += c * P.pow(J - j);
    }
    return sum;
  }
};

}  // namespace

std::vector<ExactCheck> check_w_reductions(std::uint64_t seed, int n_lambda) {
  const auto n1 = RationalPoly::variable(0), n2 = RationalPoly::variable(1),
             k = RationalPoly::variable(2);
  RationalSampler sample(seed);
  CheckCollector col;
  for (int t = 0; t < n_lambda; ++t) {
    const auto l = sample.chamber_point();
    const Rational a = l[0] * l[1] + l[0] * l[2] + l[1] * l[2];
    const Rational b = -l[0] * l[1] * l[2];
    const Rational den = l[0] * l[0] + l[1] * l[1] + l[0] * l[1];
    const Rational alpha = (2 * l[0] + l[1]) / den, beta = (2 * l[1] + l[0]) / den;

    auto q = [&](const RationalPoly& v) { return (v - l[0]) * (v - l[1]) * (v - l[2]); };
    const RationalPoly q1 = q(n1), q2 = q(n2);
    const RationalPoly dq1 = q1.derivative(0), dq2 = q2.derivative(1);
    const RationalPoly P = -(q1 * q2);

    PowerForm W;  // W_{k+1} = P^k
    W.q[0] = RationalPoly(1L);
    const PowerForm d1 = W.derivative(0, P), d2 = W.derivative(1, P);
    const PowerForm d12 = d1.derivative(1, P);
    const RationalPoly minus = (d1 - d2).at_power(1, P);
    const RationalPoly plus = (d1 + d2).at_power(1, P);

    // Derivative formulas, all over W_k = P^{k-1}.
    col.add("(d1-d2) W_{k+1} = -k (q'(n1) q(n2) - q(n1) q'(n2)) W_k", minus,
            -(k * (dq1 * q2 - q1 * dq2)), l);
    col.add("(d1+d2) W_{k+1} = -k (q'(n1) q(n2) + q(n1) q'(n2)) W_k", plus,
            -(k * (dq1 * q2 + q1 * dq2)), l);
    col.add("d1 d2 W_{k+1} = -k^2 q'(n1) q'(n2) W_k", d12.at_power(2, P), -(k * k * dq1 * dq2) * P,
            l);

    // Reductions, compared over P^{k-2}, i.e. right sides carry one P.
    const RationalPoly mixed = d12.at_power(2, P);
    const RationalPoly quot = (d1 - d2).at_power(2, P).divide_by_difference(0, 1);
    const RationalPoly sum_d = (d1 + d2).at_power(2, P);
    const RationalPoly op1 = mixed + k * quot;
    const RationalPoly op3 = mixed + Rational(3) * k * quot;
    const RationalPoly k2 = k * k;

    const RationalPoly r1 =
        6 * n1 * n1 * n2 * n2 + 2 * a * (n1 * n1 + n2 * n2 + n1 * n2) + 3 * b * (n1 + n2);
    const RationalPoly r2 = 2 * a * n1 * n2 * (n1 + n2) + 3 * b * (n1 - n2).pow(2) +
                            2 * a * a * (n1 + n2) + RationalPoly(4 * a * b);
    const RationalPoly r3 = -6 * a * n1 * n2 - 9 * b * (n1 + n2) + RationalPoly(2 * a * a);

    col.add("(d1 d2 + k (d1-d2)/(n1-n2)) W_{k+1} = -k^2 (6n1^2n2^2 + 2a(n1^2+n2^2+n1n2) + "
            "3b(n1+n2)) W_k",
            op1, -(k2 * r1 * P), l);
    col.add("{(n1+n2)(d1 d2 + k (d1-d2)/(n1-n2)) - 2k(d1+d2)} W_{k+1} = k^2 (2a n1n2(n1+n2) + "
            "3b(n1-n2)^2 + 2a^2(n1+n2) + 4ab) W_k",
            (n1 + n2) * op1 - 2 * k * sum_d, k2 * r2 * P, l);
    col.add("(d1 d2 + 3k (d1-d2)/(n1-n2)) W_{k+1} = k^2 (-6a n1n2 - 9b(n1+n2) + 2a^2) W_k", op3,
            k2 * r3 * P, l);
    const Rational ab = alpha + beta;
    col.add("{((alpha+beta)(n1+n2)+2)(d1 d2 + k (d1-d2)/(n1-n2)) - 2k(alpha+beta)(d1+d2)} "
            "W_{k+1} = -k^2 (2 r1) W_k + (alpha+beta) k^2 r2 W_k",
            (ab * (n1 + n2) + RationalPoly(2)) * op1 - 2 * ab * k * sum_d,
            (-(k2 * 2 * r1) + ab * k2 * r2) * P, l);
  }
  return col.take();
}

std::vector<ExactCheck> check_final_simplifications(std::uint64_t seed, int n_lambda) {
  const auto n1 = RationalPoly::variable(0), n2 = RationalPoly::variable(1);
  RationalSampler sample(seed);
  CheckCollector col;
  for (int t = 0; t < n_lambda; ++t) {
    const auto l = sample.chamber_point();
    const Rational &l1 = l[0], &l2 = l[1], &l3 = l[2];
    const Rational a = l1 * l2 + l1 * l3 + l2 * l3;
    const Rational b = -l1 * l2 * l3;
    const Rational V = (l1 - l2) * (l1 - l3) * (l2 - l3);
    const Rational den = l1 * l1 + l2 * l2 + l1 * l2;
    const Rational alpha = (2 * l1 + l2) / den, beta = (2 * l2 + l1) / den;
    const Rational hs = (alpha + beta) / 2, hd = (alpha - beta) / 2;
    const RationalPoly sum = n1 + n2, diff = n1 - n2, prod = n1 * n2;
    const RationalPoly e1 = RationalPoly(l3) - n1, e2 = RationalPoly(l3) - n2;

    const RationalPoly first =
        hd * (-6 * a * prod - 9 * b * sum + RationalPoly(2 * a * a)) + (hs * sum + RationalPoly(1)) * V;
    const RationalPoly first_mid = 3 * (l1 - l2) * prod + 3 * (l1 * l1 - l2 * l2) * sum +
                                   RationalPoly(3 * l3 * l3 * (l1 - l2));
    const RationalPoly first_end = 3 * (l1 - l2) * e1 * e2;
    col.add("J-coefficient: expression = 3(l1-l2) n1n2 + 3(l1^2-l2^2)(n1+n2) + 3 l3^2 (l1-l2)",
            first, first_mid, l);
    col.add("J-coefficient: expanded form = 3(l1-l2)(l3-n1)(l3-n2)", first_mid, first_end, l);

    const RationalPoly r1 = 6 * prod * prod + 2 * a * (n1 * n1 + n2 * n2 + prod) + 3 * b * sum;
    const RationalPoly r2 = 2 * a * prod * sum + 3 * b * diff * diff + 2 * a * a * sum +
                            RationalPoly(4 * a * b);
    const RationalPoly second = hs * r2 - r1 + hd * diff * diff * V;
    const RationalPoly second_mid =
        -6 * prod * prod + 3 * l3 * prod * sum - 3 * l3 * (l1 * l1 + l2 * l2) * sum +
        RationalPoly(-6 * l1 * l2 * l3 * l3) - 2 * (l1 * l2 - l3 * l3) * (n1 * n1 + n2 * n2 + prod) +
        (2 * l1 * l2 + l3 * l3) * diff * diff;
    const RationalPoly second_end =
        -6 * e1 * e2 * (prod + (l3 / 2) * sum + RationalPoly(l1 * l2));
    col.add("J'-coefficient: expression = expanded form", second, second_mid, l);
    col.add("J'-coefficient: expanded form = -6(l3-n1)(l3-n2)(n1n2 + l3(n1+n2)/2 + l1l2)",
            second_mid, second_end, l);
  }
  return col.take();
}

std::vector<ExactCheck> check_density_bracket(std::uint64_t seed, int n_lambda) {
  const auto x = RationalPoly::variable(0), y = RationalPoly::variable(1),
             z = RationalPoly::variable(2);
  RationalSampler sample(seed);
  CheckCollector col;
  for (int t = 0; t < n_lambda; ++t) {
    const auto l = sample.chamber_point();
    const RationalPoly lhs =
        3 * (l[0] - l[1]) * z * z - 6 * y * (x * x - z * z + l[2] * x + RationalPoly(l[0] * l[1]));
    const RationalPoly rhs = 3 * z * z * (2 * y + RationalPoly(l[0] - l[1])) -
                             6 * y * (x - l[0]) * (x - l[1]);
    col.add("3z^2(l1-l2) - 6y(x^2-z^2+l3x+l1l2) = 3z^2(2y+l1-l2) - 6y(x-l1)(x-l2)", lhs, rhs, l);
  }
  return col.take();
}

std::vector<ExactCheck> check_vandermonde_dunkl(const Rational& k) {
  const auto x1 = RationalPoly::variable(0), x2 = RationalPoly::variable(1),
             x3 = RationalPoly::variable(2);
  const RationalPoly V = vandermonde_poly();
  const RationalPoly p1 = x1 + x2 + x3;
  const RationalPoly p2 = x1 * x1 + x2 * x2 + x3 * x3;
  const RationalPoly e3 = x1 * x2 * x3;
  const std::vector<RationalPoly> symmetric = {RationalPoly(1L), p1, p2, e3, p1 * p2 + e3,
                                               p2 * p2 - 3 * p1 * e3};
  std::vector<ExactCheck> out;
  out.push_back(poly_check("d1 V = (m1-m3)(m2-m3) + (m1-m2)(m2-m3)", V.derivative(0),
                           (x1 - x3) * (x2 - x3) + (x1 - x2) * (x2 - x3)));
  ExactCheck t1{"T1(V f) = V d1 f + (2k+1) d1V f for symmetric f", true, ""};
  ExactCheck t2{"T2(V f) = V d2 f + (2k+1) d2V f for symmetric f", true, ""};
  ExactCheck rel{"T2(V f)(m1,m2,m3) = -T1(V f)(m2,m1,m3) for symmetric f", true, ""};
  for (const auto& f : symmetric) {
    const RationalPoly vf = V * f;
    const RationalPoly a = poly_dunkl_T(0, k, vf);
    const RationalPoly b = poly_dunkl_T(1, k, vf);
    if (!(a == V * f.derivative(0) + (2 * k + 1) * V.derivative(0) * f)) {
      t1.holds = false;
      t1.detail = "fails for f = " + f.to_string();
    }
    if (!(b == V * f.derivative(1) + (2 * k + 1) * V.derivative(1) * f)) {
      t2.holds = false;
      t2.detail = "fails for f = " + f.to_string();
    }
    if (!(b == -a.swapped(0, 1))) {
      rel.holds = false;
      rel.detail = "fails for f = " + f.to_string();
    }
  }
  out.push_back(t1);
  out.push_back(t2);
  out.push_back(rel);
  return out;
}

}  // namespace dunkl_a2
