#include "dunkl_a2/derivation.hpp"

#include <cmath>
#include <initializer_list>

#include "dunkl_a2/bessel.hpp"
#include "dunkl_a2/dunkl_ops.hpp"
#include "dunkl_a2/kernels.hpp"
#include "dunkl_a2/poly_oracle.hpp"

namespace dunkl_a2 {

std::string to_string(CheckMethod m) {
  switch (m) {
    case CheckMethod::kQuadrature: return "quadrature";
    case CheckMethod::kFiniteDifference: return "finite-difference";
    case CheckMethod::kPointwise: return "pointwise";
    case CheckMethod::kExact: return "exact";
  }
  return "unknown";
}

bool DerivationReport::all_passed() const {
  for (const auto& e : entries) {
    if (!e.passed()) return false;
  }
  return true;
}

const IdentityResidual* DerivationReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

double residual(double lhs, std::initializer_list<double> rhs_terms) {
  double rhs = 0, mag = std::abs(lhs);
  double terms = 0;
  for (double t : rhs_terms) {
    rhs += t;
    terms += std::abs(t);
  }
  mag = std::max(mag, terms);
  return mag == 0 ? 0.0 : std::abs(lhs - rhs) / mag;
}

struct NodeData {
  double a, b, w;
  double e, J, dJ, d2J, Jp;
  double qa, qb, dqa, dqb;
};

}  // namespace

DerivationReport verify_derivation_identities(double k, const Point3d& mu,
                                              const ChamberPoint<double>& lambda, int n_nodes,
                                              bool include_exact) {
  const Multiplicity<double> kk(k);
  const double l1 = lambda.l1(), l2 = lambda.l2(), l3 = lambda.l3();
  const double s = mu(0) + mu(1) - 2 * mu(2);
  const double d = mu(0) - mu(1);
  const double Vl = vandermonde(lambda);
  const double Vm = vandermonde(mu);
  const double m13 = (mu(0) - mu(2)) * (mu(1) - mu(2));
  const double m12_13 = (mu(0) - mu(1)) * (mu(0) - mu(2));
  const double m12_23 = (mu(0) - mu(1)) * (mu(1) - mu(2));
  const ChamberInvariants<double> inv(lambda);
  const LemmaCoefficients<double> lc(lambda);
  const double al = lc.alpha, be = lc.beta;

  // G0 = G(3k+3) / (V^{2k+1} G(k+1)^3); C = (2k+1) G0.
  const double G0 = std::exp(std::lgamma(3 * k + 3) - 3 * std::lgamma(k + 1) -
                             (2 * k + 1) * std::log(Vl));
  const double C = (2 * k + 1) * G0;
  const double H = std::exp(std::lgamma(3 * k) - 3 * std::lgamma(k) - 2 * k * std::log(Vl));

  const KernelA2<double> kernel_k(kk, lambda, n_nodes);
  const KernelA2<double> kernel_k1(Multiplicity<double>(k + 1), lambda, n_nodes);
  const double J1 = kernel_k1.J(mu);
  auto J1f = [&](const Point3d& p) { return kernel_k1.J(p); };
  auto VJ1 = [&](const Point3d& p) { return vandermonde(p) * kernel_k1.J(p); };

  const BesselOrder<double> order(k - 0.5), order_up(k + 0.5);
  auto q = [&](double t) { return (t - l1) * (t - l2) * (t - l3); };
  auto dq = [&](double t) {
    return (t - l2) * (t - l3) + (t - l1) * (t - l3) + (t - l1) * (t - l2);
  };

  std::vector<NodeData> nodes;
  for (const auto& nd : kernel_k.box().nodes()) {
    NodeData x{};
    x.a = nd.nu1;
    x.b = nd.nu2;
    x.w = nd.weight;
    x.e = std::exp(s * (x.a + x.b) / 2);
    const double z = d * (x.a - x.b) / 2;
    const auto bv = bessel_J_all(order, z);
    x.J = bv.value;
    x.dJ = bv.first;
    x.d2J = bv.second;
    x.Jp = bessel_J(order_up, z);
    x.qa = q(x.a);
    x.qb = q(x.b);
    x.dqa = dq(x.a);
    x.dqb = dq(x.b);
    nodes.push_back(x);
  }
  // Integral against W_k of f(node) where derivatives of W_{k+1} are
  // written as multiples of W_k.
  auto I = [&](auto f) {
    double sum = 0;
    for (const auto& x : nodes) {
      const double d1 = -k * x.dqa * x.qb;   // d/dnu1 W_{k+1} / W_k
      const double d2 = -k * x.qa * x.dqb;   // d/dnu2 W_{k+1} / W_k
      const double d12 = -k * k * x.dqa * x.dqb;
      const double W1 = -x.qa * x.qb;        // W_{k+1} / W_k
      sum += x.w * f(x, d1, d2, d12, W1);
    }
    return sum;
  };

  DerivationReport rep;
  auto add = [&](std::string name, CheckMethod m, double r, double printed, double tol,
                 std::string note = "") {
    IdentityResidual e;
    e.name = std::move(name);
    e.method = m;
    e.residual = r;
    e.printed_residual = printed;
    e.printed_differs = printed != r;
    e.tolerance = tol;
    e.note = std::move(note);
    rep.entries.push_back(std::move(e));
  };
  const double qtol = kQuadratureIdentityTol, ftol = kFiniteDifferenceIdentityTol;

  // (m1-m2) J_{k+1} against W_{k+1}.
  {
    double integral = 0;
    const BesselOrder<double> o(k - 0.5);
    for (const auto& nd : kernel_k1.box().nodes()) {
      integral += nd.weight * std::exp(s * (nd.nu1 + nd.nu2) / 2) *
                  bessel_J_deriv(o, d * (nd.nu1 - nd.nu2) / 2, 1);
    }
    const double r = residual(d * J1, {2 * C * integral});
    add("(m1-m2) J_{k+1} = (4k+2) G0 int e J' W_{k+1}", CheckMethod::kQuadrature, r, r, qtol);
  }
  // (m1-m2)^2 J_{k+1}; the written form has the opposite sign.
  {
    const double t = 2 * C * I([&](const NodeData& x, double d1, double d2, double, double) {
      return x.e * x.J * (d1 - d2);
    });
    add("(m1-m2)^2 J_{k+1} = -(4k+2) G0 int e J (d1-d2) W_{k+1}", CheckMethod::kQuadrature,
        residual(d * d * J1, {-t}), residual(d * d * J1, {t}), qtol,
        "written with a plus sign; the minus sign holds");
  }
  // (m1-m2)^3 J_{k+1}.
  {
    const double t1 = -2 * C * I([&](const NodeData& x, double d1, double d2, double, double) {
      return d * x.e * x.d2J * (d1 - d2);
    });
    const double t2 = -4 * k * 2 * C * I([&](const NodeData& x, double d1, double d2, double,
                                             double) {
      return x.e * x.dJ * (d1 - d2) / (x.a - x.b);
    });
    const double r = residual(d * d * d * J1, {t1, t2});
    add("(m1-m2)^3 J_{k+1}", CheckMethod::kQuadrature, r, r, qtol);
  }
  // (m1+m2-2m3)^2 (m1-m2) J_{k+1}.
  {
    const double t = -2 * C * I([&](const NodeData& x, double d1, double d2, double, double) {
      return s * x.e * x.dJ * (d1 + d2);
    });
    const double r = residual(s * s * d * J1, {t});
    add("(m1+m2-2m3)^2 (m1-m2) J_{k+1}", CheckMethod::kQuadrature, r, r, qtol);
  }
  // Pointwise integration-by-parts observations at interior points, with
  // the nu-derivatives of e J' (resp. e J) by finite differences.
  {
    auto eJ = [&](double a, double b, int deriv) {
      const auto bv = bessel_J_all(order, d * (a - b) / 2);
      return std::exp(s * (a + b) / 2) * (deriv == 0 ? bv.value : bv.first);
    };
    auto grad = [&](double a, double b, int deriv, int axis) {
      const double h = 1e-4 * (1 + std::abs(a) + std::abs(b));
      auto f = [&](const Point3d& p) { return eJ(p(0), p(1), deriv); };
      return directional_derivative(f, Point3d(a, b, 0), Point3d(Point3d::Unit(axis)), h);
    };
    double worst1 = 0, worst2 = 0, worst2_printed = 0;
    const double fr[3] = {0.21, 0.5, 0.83};
    for (double u : fr) {
      for (double v : fr) {
        const double a = l2 + u * (l1 - l2), b = l3 + v * (l2 - l3);
        const double e = std::exp(s * (a + b) / 2);
        const auto bv = bessel_J_all(order, d * (a - b) / 2);
        const double qa = q(a), qb = q(b), dqa = dq(a), dqb = dq(b);
        const double d1 = -k * dqa * qb, d2 = -k * qa * dqb, W1 = -qa * qb;
        // First: with W_{k+1}.
        const double lhs1 = -s * e * bv.first * (d1 + d2) + d * e * bv.second * (d1 - d2);
        const double rhs1a = -2 * grad(a, b, 1, 0) * d2, rhs1b = -2 * grad(a, b, 1, 1) * d1;
        worst1 = std::max(worst1, residual(lhs1, {rhs1a, rhs1b}));
        // Second: with (nu1 - nu2) W_{k+1}.
        const double p1 = W1 + (a - b) * d1;   // d/dnu1 ((nu1-nu2) W_{k+1}) / W_k
        const double p2 = -W1 + (a - b) * d2;  // d/dnu2 ((nu1-nu2) W_{k+1}) / W_k
        const double lhs2 = -s * e * bv.value * (p1 + p2) + d * e * bv.first * (p1 - p2);
        worst2 = std::max(worst2, residual(lhs2, {-2 * grad(a, b, 0, 0) * p2,
                                                  -2 * grad(a, b, 0, 1) * p1}));
        worst2_printed = std::max(worst2_printed, residual(lhs2, {-2 * grad(a, b, 1, 0) * p2,
                                                                  -2 * grad(a, b, 1, 1) * p1}));
      }
    }
    add("pointwise: -s e J' (d1+d2)W + d e J'' (d1-d2)W = -2 d1{e J'} d2W - 2 d2{e J'} d1W",
        CheckMethod::kPointwise, worst1, worst1, kPointwiseIdentityTol);
    add("pointwise: -s e J (d1+d2)F + d e J' (d1-d2)F = -2 d1{e J} d2F - 2 d2{e J} d1F, "
        "F = (nu1-nu2) W",
        CheckMethod::kPointwise, worst2, worst2_printed, kPointwiseIdentityTol,
        "written with e J' inside the derivatives; e J holds");
  }
  // (i) V(m) J_{k+1}.
  {
    const double t = 2 * C * I([&](const NodeData& x, double d1, double d2, double d12, double) {
      return x.e * x.dJ * (d12 + k * (d1 - d2) / (x.a - x.b));
    });
    const double r = residual(Vm * J1, {t});
    add("(i) V(m) J_{k+1} = (4k+2) G0 int e J' (d1 d2 + k (d1-d2)/(n1-n2)) W_{k+1}",
        CheckMethod::kQuadrature, r, r, qtol);
  }
  // (iii) and (ii).
  {
    const double a1 = I([&](const NodeData& x, double d1, double d2, double, double) {
      return x.e * x.J * (d1 - d2);
    });
    const double a2 = I([&](const NodeData& x, double d1, double d2, double, double) {
      return x.e * x.dJ * (d1 + d2);
    });
    add("(iii) (m1-m2)(m1-m3) J_{k+1} = -(2k+1) G0 int [e J (d1-d2) + e J' (d1+d2)] W_{k+1}",
        CheckMethod::kQuadrature, residual(m12_13 * J1, {-C * a1, -C * a2}),
        residual(m12_13 * J1, {-2 * C * a1, -2 * C * a2}), qtol,
        "written with constant (4k+2); (2k+1) holds");
    const double r = residual(m12_23 * J1, {C * a1, -C * a2});
    add("(ii) (m1-m2)(m2-m3) J_{k+1} = (2k+1) G0 int [e J (d1-d2) - e J' (d1+d2)] W_{k+1}",
        CheckMethod::kQuadrature, r, r, qtol);
  }
  // (iv) pieces.
  const double grad1 = directional_derivative(J1f, mu, Point3d(Point3d::Unit(0)), default_step(mu));
  const double part1 = G0 / 2 * Vm * I([&](const NodeData& x, double, double, double, double W1) {
    return x.e * x.Jp * (x.a - x.b) * (x.a + x.b) * W1;
  });
  const double part2_lhs = C * m13 * I([&](const NodeData& x, double, double, double, double W1) {
    return x.e * x.J * (x.a - x.b) * W1;
  });
  {
    const double r = residual(Vm * grad1, {part1, part2_lhs, -(2 * k + 1) * m13 * J1});
    add("(iv) V(m) d1 J_{k+1} split by the z J'_{a+1} identity", CheckMethod::kFiniteDifference,
        r, r, ftol);
  }
  {
    const double t = C * I([&](const NodeData& x, double d1, double d2, double d12, double) {
      return x.e * x.dJ *
             (d1 + d2 + (x.a + x.b) * d12 + k * (x.a + x.b) * (d1 - d2) / (x.a - x.b));
    });
    const double r = residual(part1, {t});
    add("(iv) first part: d1 d2 ((n1+n2) W) + k (d1-d2)((n1+n2) W)/(n1-n2)",
        CheckMethod::kQuadrature, r, r, qtol);
  }
  {
    const double t1 = -C / 4 * I([&](const NodeData& x, double d1, double d2, double, double) {
      return s * x.e * x.J * (x.a - x.b) * (d1 + d2);
    });
    const double t2 = C / 4 * I([&](const NodeData& x, double d1, double d2, double, double W1) {
      return d * x.e * x.dJ * (2 * W1 + (x.a - x.b) * (d1 - d2));
    });
    const double t3 = k * C * I([&](const NodeData& x, double d1, double d2, double, double) {
      return x.e * x.J * (d1 - d2);
    });
    const double r = residual(part2_lhs, {t1, t2, t3});
    add("(iv) second part after one integration by parts", CheckMethod::kQuadrature, r, r, qtol);
    const double t = C * I([&](const NodeData& x, double d1, double d2, double d12, double) {
      return x.e * x.J * (-d1 + d2 + (x.a - x.b) * d12 + k * (d1 - d2));
    });
    const double r2 = residual(part2_lhs, {t});
    add("(iv) second part: d1 d2 ((n1-n2) W) + k (d1-d2) W", CheckMethod::kQuadrature, r2, r2,
        qtol);
  }
  // T_1, T_2, T of V(.) J_{k+1}(., lambda).
  const double A = C * I([&](const NodeData& x, double d1, double d2, double d12, double) {
    return x.e * x.dJ *
           ((x.a + x.b) * (d12 + k * (d1 - d2) / (x.a - x.b)) - 2 * k * (d1 + d2));
  });
  const double B = C * I([&](const NodeData& x, double d1, double d2, double d12, double) {
    return x.e * x.J * (x.a - x.b) * (d12 + 3 * k * (d1 - d2) / (x.a - x.b));
  });
  const double T1 = apply_dunkl_T(0, k, VJ1, mu);
  const double T2 = apply_dunkl_T(1, k, VJ1, mu);
  {
    const double d1V = (mu(0) - mu(2)) * (mu(1) - mu(2)) + (mu(0) - mu(1)) * (mu(1) - mu(2));
    const double r = residual(T1, {Vm * grad1, (2 * k + 1) * d1V * J1});
    add("(iv) T1(V J_{k+1}) = V d1 J_{k+1} + (2k+1) d1V J_{k+1}", CheckMethod::kFiniteDifference,
        r, r, ftol);
    const double r1 = residual(T1, {A, B});
    add("T1(V J_{k+1}) integral formula", CheckMethod::kFiniteDifference, r1, r1, ftol);
    const Point3d swapped(mu(1), mu(0), mu(2));
    const double r2 = residual(T2, {-apply_dunkl_T(0, k, VJ1, swapped)});
    add("T2(V J_{k+1})(m1,m2,m3) = -T1(V J_{k+1})(m2,m1,m3)", CheckMethod::kFiniteDifference, r2,
        r2, ftol);
    const double r3 = residual(T2, {A, -B});
    add("T2(V J_{k+1}) integral formula", CheckMethod::kFiniteDifference, r3, r3, ftol);
  }
  {
    const double ab = al + be;
    const double A17 = C * I([&](const NodeData& x, double d1, double d2, double d12, double) {
      return x.e * x.dJ *
             ((ab * (x.a + x.b) + 2) * (d12 + k * (d1 - d2) / (x.a - x.b)) -
              2 * k * ab * (d1 + d2));
    });
    const double B17 = C * (al - be) * I([&](const NodeData& x, double d1, double d2,
                                               double d12, double) {
      return x.e * x.J * (x.a - x.b) * (d12 + 3 * k * (d1 - d2) / (x.a - x.b));
    });
    const double T = al * T1 + be * T2 + VJ1(mu);
    const double r = residual(T, {A17, B17});
    add("T(V J_{k+1}) integral formula", CheckMethod::kFiniteDifference, r, r, ftol);
  }
  // E_k before the final simplification.
  {
    const double a = inv.a, b = inv.b;
    const double hs = (al + be) / 2, hd = (al - be) / 2;
    const double t1 = H * I([&](const NodeData& x, double, double, double, double) {
      const double n1 = x.a, n2 = x.b;
      return x.e * x.J * (n1 - n2) *
             (hd * (-6 * a * n1 * n2 - 9 * b * (n1 + n2) + 2 * a * a) +
              (hs * (n1 + n2) + 1) * Vl);
    });
    const double t2 = H * I([&](const NodeData& x, double, double, double, double) {
      const double n1 = x.a, n2 = x.b;
      return x.e * x.dJ *
             (hs * (2 * a * n1 * n2 * (n1 + n2) + 3 * b * (n1 - n2) * (n1 - n2) +
                    2 * a * a * (n1 + n2) + 4 * a * b) -
              (6 * n1 * n1 * n2 * n2 + 2 * a * (n1 * n1 + n2 * n2 + n1 * n2) +
               3 * b * (n1 + n2)) +
              hd * (n1 - n2) * (n1 - n2) * Vl);
    });
    const double r = residual(kernel_k.E(mu), {t1, t2});
    add("E_k before simplification of the J and J' coefficients", CheckMethod::kQuadrature, r, r,
        qtol);
  }

  if (include_exact) {
    auto push = [&](const std::vector<ExactCheck>& checks) {
      for (const auto& c : checks) {
        add(c.name, CheckMethod::kExact, c.holds ? 0.0 : 1.0, c.holds ? 0.0 : 1.0, 0.0,
            c.detail);
      }
    };
    push(check_moment_factorizations());
    push(check_w_reductions());
    push(check_final_simplifications());
    push(check_density_bracket());
    push(check_vandermonde_dunkl(Rational(k)));
  }
  return rep;
}

}  // namespace dunkl_a2
