// dunkl-a2: evaluate the A2 Dunkl kernel, generalized Bessel function and
// intertwining density; run the verification suites; query the exact
// series oracle.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dunkl_a2/errors.hpp"
#include "dunkl_a2/kernels.hpp"
#include "dunkl_a2/poly.hpp"
#include "dunkl_a2/poly_oracle.hpp"
#include "dunkl_a2/suites.hpp"

namespace {

using namespace dunkl_a2;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr double kDeskScaleZ = 30.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text).get_d();
  } catch (const DomainError&) {
    throw DomainError("malformed number for " + what + ": '" + text + "'");
  }
}

Point3d parse_triple(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw DomainError(what + " needs three comma-separated values");
  return Point3d(parse_real(parts[0], what), parse_real(parts[1], what),
                 parse_real(parts[2], what));
}

Rational parse_k(const std::string& text) {
  const Rational k = parse_rational(text);
  if (k <= 0) throw DomainError("k must be positive");
  return k;
}

/// "lo:hi:n" or a single value.
std::vector<double> parse_axis(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return {parse_real(parts[0], what)};
  if (parts.size() != 3) throw DomainError(what + " must be 'lo:hi:n' or a single value");
  const double lo = parse_real(parts[0], what), hi = parse_real(parts[1], what);
  int n = 0;
  try {
    n = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw DomainError(what + ": point count must be an integer");
  }
  if (n < 1) throw DomainError(what + ": point count must be at least 1");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DUNKL_A2_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, unsigned(cap));
  }
  return n;
}

/// Evaluates rows [0, n_rows) in parallel; each row renders to a string so
/// output order does not depend on scheduling.
template <typename RowFn>
std::vector<std::string> parallel_rows(std::size_t n_rows, RowFn row) {
  std::vector<std::string> out(n_rows);
  std::vector<std::exception_ptr> errors(n_rows);
  const unsigned n_threads = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n_rows, 1));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t r = t; r < n_rows; r += n_threads) {
        try {
          out[r] = row(r);
        } catch (...) {
          errors[r] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void warn_if_large(const Point3d& mu, const ChamberPoint<double>& l) {
  const double z = std::abs(mu(0) - mu(1)) * (l.l1() - l.l3()) / 2;
  const double s = std::abs(mu(0) + mu(1) - 2 * mu(2)) * l.vector().cwiseAbs().maxCoeff();
  if (z > kDeskScaleZ || s > kDeskScaleZ) {
    std::cerr << "warning: Bessel argument up to " << num(std::max(z, s))
              << " exceeds the desk-scale regime (|z| <= 30)\n";
  }
}

struct Common {
  std::string k = "1";
  std::string lambda = "1,0,-1";
  std::string format;
  int quad_order = kDefaultQuadOrder;
  int series_degree = 12;
  double tol = 1e-8;
};

void add_common(CLI::App* cmd, Common& c, bool with_lambda = true) {
  cmd->add_option("--k", c.k, "multiplicity k > 0 (decimal or p/q)")->capture_default_str();
  if (with_lambda) {
    cmd->add_option("--lambda", c.lambda, "spectral point l1,l2,l3 with l3<l2<l1, sum 0")
        ->capture_default_str();
  }
  cmd->add_option("--quad-order", c.quad_order, "Gauss-Jacobi nodes per axis")
      ->capture_default_str()
      ->check(CLI::Range(8, 4096));
  cmd->add_option("--series-degree", c.series_degree, "exact series truncation degree")
      ->capture_default_str()
      ->check(CLI::Range(0, 40));
  cmd->add_option("--tol", c.tol, "tolerance")->capture_default_str()->check(CLI::PositiveNumber);
}

int cmd_eval(const Common& c, const std::string& mu_text, const std::string& x_text,
             const std::string& y_text) {
  const double k = parse_k(c.k).get_d();
  const ChamberPoint<double> l(parse_triple(c.lambda, "--lambda"));
  const Point3d mu = parse_triple(mu_text, "--mu");
  warn_if_large(mu, l);
  const KernelA2<double> ker(Multiplicity<double>(k), l, c.quad_order);
  const KernelA2<double> coarse(Multiplicity<double>(k), l, std::max(8, c.quad_order / 2));
  const double E = ker.E(mu), J = ker.J(mu);
  const double err = std::max(std::abs(E - coarse.E(mu)), std::abs(J - coarse.J(mu)));
  const bool with_density = !x_text.empty() || !y_text.empty();
  double x = 0, y = 0, F = 0;
  if (with_density) {
    if (x_text.empty() || y_text.empty()) throw DomainError("--x and --y must be given together");
    x = parse_real(x_text, "--x");
    y = parse_real(y_text, "--y");
    F = density_F(k, x, y, l, c.quad_order);
  }
  if (err > c.tol) {
    std::cerr << "warning: estimated quadrature error " << num(err) << " exceeds --tol "
              << num(c.tol) << "\n";
  }
  if (c.format == "json") {
    json j = {{"k", k},
              {"lambda", {l.l1(), l.l2(), l.l3()}},
              {"mu", {mu(0), mu(1), mu(2)}},
              {"quad_order", c.quad_order},
              {"E", E},
              {"J", J},
              {"error_estimate", err}};
    if (with_density) {
      j["x"] = x;
      j["y"] = y;
      j["F"] = F;
    }
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "k,mu1,mu2,mu3,quad_order,E,J,error_estimate" << (with_density ? ",x,y,F" : "")
              << "\n"
              << num(k) << "," << num(mu(0)) << "," << num(mu(1)) << "," << num(mu(2)) << ","
              << c.quad_order << "," << num(E) << "," << num(J) << "," << num(err);
    if (with_density) std::cout << "," << num(x) << "," << num(y) << "," << num(F);
    std::cout << "\n";
  } else {
    std::cout << "E=" << num(E) << "\nJ=" << num(J) << "\n";
    if (with_density) std::cout << "F=" << num(F) << "\n";
    std::cout << "quad_order=" << c.quad_order << "\nerror_estimate=" << num(err) << "\n";
  }
  return kExitOk;
}

int cmd_grid(const Common& c, const std::string& xs, const std::string& ys,
             const std::vector<std::string>& mus) {
  const double k = parse_k(c.k).get_d();
  const ChamberPoint<double> l(parse_triple(c.lambda, "--lambda"));
  const bool density = !xs.empty() || !ys.empty();
  const bool kernel = !mus[0].empty() || !mus[1].empty() || !mus[2].empty();
  if (density == kernel) {
    throw DomainError("grid needs either --x/--y (density) or --mu1/--mu2/--mu3 (kernel)");
  }
  const bool json_out = c.format == "json";
  std::vector<std::string> rows;
  std::string header;
  if (density) {
    if (xs.empty() || ys.empty()) throw DomainError("--x and --y must be given together");
    const auto X = parse_axis(xs, "--x"), Y = parse_axis(ys, "--y");
    header = "x,y,F";
    rows = parallel_rows(X.size(), [&](std::size_t i) {
      std::string out;
      for (double y : Y) {
        const double F = density_F(k, X[i], y, l, c.quad_order);
        out += json_out ? json({{"x", X[i]}, {"y", y}, {"F", F}}).dump() + "\n"
                        : num(X[i]) + "," + num(y) + "," + num(F) + "\n";
      }
      return out;
    });
  } else {
    std::vector<double> axes[3];
    for (int a = 0; a < 3; ++a) {
      axes[a] = parse_axis(mus[a].empty() ? "0" : mus[a], "--mu" + std::to_string(a + 1));
    }
    const KernelA2<double> ker(Multiplicity<double>(k), l, c.quad_order);
    for (double m1 : {axes[0].front(), axes[0].back()}) {
      for (double m2 : {axes[1].front(), axes[1].back()}) {
        for (double m3 : {axes[2].front(), axes[2].back()}) warn_if_large(Point3d(m1, m2, m3), l);
      }
    }
    header = "mu1,mu2,mu3,E";
    rows = parallel_rows(axes[0].size(), [&](std::size_t i) {
      std::string out;
      for (double m2 : axes[1]) {
        for (double m3 : axes[2]) {
          const double E = ker.E(Point3d(axes[0][i], m2, m3));
          out += json_out ? json({{"mu1", axes[0][i]}, {"mu2", m2}, {"mu3", m3}, {"E", E}}).dump() +
                                "\n"
                          : num(axes[0][i]) + "," + num(m2) + "," + num(m3) + "," + num(E) + "\n";
        }
      }
      return out;
    });
  }
  if (json_out) {
    // JSON lines: one object per grid point.
    for (const auto& r : rows) std::cout << r;
  } else {
    std::cout << header << "\n";
    for (const auto& r : rows) std::cout << r;
  }
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, bool k_given) {
  SuiteConfig cfg;
  if (k_given) cfg.k = parse_k(c.k);
  cfg.quad_order = c.quad_order;
  cfg.series_degree = c.series_degree;
  cfg.tol = c.tol;
  const SuiteReport rep = run_suite(suite, cfg);
  if (c.format == "json") {
    json lines = json::array();
    for (const auto& l : rep.lines()) {
      lines.push_back({{"name", l.name},
                       {"residual", l.residual},
                       {"tolerance", l.tolerance},
                       {"passed", l.passed()},
                       {"worst_case", l.worst_case}});
    }
    std::cout << json({{"suite", rep.suite()},
                       {"passed", rep.passed()},
                       {"lines", lines},
                       {"notes", rep.notes()}})
                     .dump(2)
              << "\n";
  } else {
    for (const auto& l : rep.lines()) {
      std::cout << (l.passed() ? "PASS " : "FAIL ") << l.name << "  max residual " << num(l.residual)
                << " (tol " << num(l.tolerance) << ")";
      if (!l.passed() && !l.worst_case.empty()) std::cout << " at " << l.worst_case;
      std::cout << "\n";
    }
    for (const auto& n : rep.notes()) std::cout << "note: " << n << "\n";
  }
  if (const SuiteLine* f = rep.first_failure()) {
    std::cerr << "verification failed: " << f->name << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_oracle(const Common& c, const std::string& mu_text, int only_degree) {
  const Rational kq = parse_k(c.k);
  const Point3d lambda = parse_triple(c.lambda, "--lambda");
  const Point3d mu = parse_triple(mu_text, "--mu");
  const int M = only_degree >= 0 ? only_degree : c.series_degree;
  const KernelSeries series = kernel_series(kq, M);
  OracleValue E, J;
  if (only_degree >= 0) {
    const double e = series.evaluate_component(only_degree, mu, lambda);
    double j = 0;
    for (const auto& s : kSymmetricGroup) j += series.evaluate_component(only_degree, s.apply(mu), lambda);
    E.value = e;
    J.value = j / 6;
  } else {
    E = oracle_E(series, mu, lambda);
    J = oracle_J(series, mu, lambda);
  }
  if (c.format == "json") {
    json j = {{"k", to_string(kq)},
              {"mu", {mu(0), mu(1), mu(2)}},
              {"lambda", {lambda(0), lambda(1), lambda(2)}},
              {"series_degree", M},
              {"E", E.value},
              {"J", J.value}};
    if (only_degree >= 0) {
      j["degree_only"] = only_degree;
    } else {
      j["E_tail_estimate"] = E.tail_estimate;
      j["J_tail_estimate"] = J.tail_estimate;
      j["tail_bound"] = E.tail_bound;
    }
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "k,mu1,mu2,mu3,series_degree,E,E_tail_estimate,J,J_tail_estimate,tail_bound\n"
              << to_string(kq) << "," << num(mu(0)) << "," << num(mu(1)) << "," << num(mu(2))
              << "," << M << "," << num(E.value) << "," << num(E.tail_estimate) << ","
              << num(J.value) << "," << num(J.tail_estimate) << "," << num(E.tail_bound) << "\n";
  } else {
    std::cout << "E=" << num(E.value) << "\nJ=" << num(J.value) << "\nseries_degree=" << M
              << "\n";
    if (only_degree >= 0) {
      std::cout << "degree_only=" << only_degree << "\n";
    } else {
      std::cout << "E_tail_estimate=" << num(E.tail_estimate)
                << "\nJ_tail_estimate=" << num(J.tail_estimate)
                << "\ntail_bound=" << num(E.tail_bound) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"A2 Dunkl kernel, generalized Bessel function and intertwining density"};
  app.require_subcommand(1);

  Common c;
  std::string mu = "0,0,0", x, y, suite = "all";
  std::string xs, ys, mus[3];
  int only_degree = -1;
  const std::vector<std::string> formats = {"text", "csv", "json"};

  auto* eval = app.add_subcommand("eval", "evaluate E_k, J_k (and F_k at --x/--y)");
  add_common(eval, c);
  eval->add_option("--mu", mu, "point mu1,mu2,mu3")->capture_default_str();
  eval->add_option("--x", x, "density coordinate x");
  eval->add_option("--y", y, "density coordinate y");
  eval->add_option("--format", c.format, "text|csv|json")->check(CLI::IsMember(formats));

  auto* grid = app.add_subcommand("grid", "tabulate F_k over (x,y) or E_k over mu");
  add_common(grid, c);
  grid->add_option("--x", xs, "x axis lo:hi:n");
  grid->add_option("--y", ys, "y axis lo:hi:n");
  grid->add_option("--mu1", mus[0], "mu1 axis lo:hi:n or value");
  grid->add_option("--mu2", mus[1], "mu2 axis lo:hi:n or value");
  grid->add_option("--mu3", mus[2], "mu3 axis lo:hi:n or value");
  grid->add_option("--format", c.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, c, false);
  verify->add_option("--suite", suite, "suite name")
      ->capture_default_str()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--format", c.format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* oracle = app.add_subcommand("oracle", "exact-series reference values");
  add_common(oracle, c);
  oracle->add_option("--mu", mu, "point mu1,mu2,mu3")->capture_default_str();
  oracle->add_option("--degree-only", only_degree, "evaluate only the degree-m component")
      ->check(CLI::Range(0, 40));
  oracle->add_option("--format", c.format, "text|csv|json")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(c, mu, x, y);
    if (*grid) {
      if (c.format.empty()) c.format = "csv";
      return cmd_grid(c, xs, ys, {mus[0], mus[1], mus[2]});
    }
    if (*verify) return cmd_verify(c, suite, verify->count("--k") > 0);
    if (*oracle) return cmd_oracle(c, mu, only_degree);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
