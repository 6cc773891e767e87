#include "spinor_forge/spin_connection.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace spinor_forge {

namespace {

Multivector zero() { return Multivector(sta::signature()); }

void assemble(SpinConnectionAtPoint& sc) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) sc.lowered[a][b][c] = eta()(c, c) * sc.coeff[a][b][c];
    }
  }
  for (int a = 0; a < 4; ++a) {
    Multivector w = zero();
    for (int c = 0; c < 4; ++c) {
      for (int d = 0; d < 4; ++d) {
        if (c == d) continue;
        const double wcd = sc.coeff[a][d][c] * eta()(d, d);
        w += (0.5 * wcd) * (sta::m(c) * sta::m(d));
      }
    }
    sc.frame[a] = w;
    sc.frame_matrix[a] = rep(w);
  }
  for (int mu = 0; mu < 4; ++mu) {
    Multivector w = zero();
    for (int a = 0; a < 4; ++a) w += sc.geo.h(a, mu) * sc.frame[a];
    sc.coordinate[mu] = w;
    sc.coordinate_matrix[mu] = rep(w);
  }
}

Multivector q_up(const SpinConnectionAtPoint& sc, int mu) {
  const Mat4 up = sc.geo.g_inv * sc.geo.h.transpose();
  Multivector out = zero();
  for (int a = 0; a < 4; ++a) out += up(mu, a) * sta::sigma(a);
  return out;
}

Multivector q_low(const SpinConnectionAtPoint& sc, int mu) {
  Multivector out = zero();
  for (int a = 0; a < 4; ++a) out += sc.geo.h(a, mu) * sta::sigma(a);
  return out;
}

Multivector q_check(const SpinConnectionAtPoint& sc, int mu) {
  Multivector out = zero();
  for (int a = 0; a < 4; ++a) out += sc.geo.h(a, mu) * sta::sigma_check(a);
  return out;
}

// d_rho q^mu + Gamma^mu_{rho tau} q^tau.
Multivector covariant_q_up(const SpinConnectionAtPoint& sc, int mu, int rho) {
  Multivector out = zero();
  for (int a = 0; a < 4; ++a) out += sc.geo.dq_up[rho](mu, a) * sta::sigma(a);
  for (int tau = 0; tau < 4; ++tau) out += sc.geo.gamma[mu](rho, tau) * q_up(sc, tau);
  return out;
}

}  // namespace

PointGeometry point_geometry(const Spacetime& s, const Tetrad& t, const Point& x, double tol) {
  PointGeometry geo;
  geo.x = x;
  geo.g = s.metric(x);
  const Eigen::FullPivLU<Mat4> lu(geo.g);
  if (!lu.isInvertible()) throw GeometryError("singular metric");
  geo.g_inv = lu.inverse();
  geo.gamma = christoffel(s, x);
  geo.h = t.h(x);
  const double residual = (geo.g - geo.h.transpose() * eta() * geo.h).cwiseAbs().maxCoeff();
  if (!(residual <= tol)) {
    throw GeometryError("tetrad " + t.name() + " does not reproduce the metric of " + s.name() +
                        " (residual " + std::to_string(residual) + ")");
  }
  geo.h_inv = t.inverse(x);
  auto h = [&t](const Point& y) { return t.h(y); };
  auto h_inv = [&t](const Point& y) { return t.inverse(y); };
  auto up = [&s, &t](const Point& y) -> Mat4 {
    return s.metric(y).inverse() * t.h(y).transpose();
  };
  for (int nu = 0; nu < 4; ++nu) {
    geo.dh[nu] = partial(h, x, nu, s.domain());
    geo.dh_inv[nu] = partial(h_inv, x, nu, s.domain());
    geo.dq_up[nu] = partial(up, x, nu, s.domain());
  }
  return geo;
}

SpinConnectionAtPoint spin_connection(const Spacetime& s, const Tetrad& t, const Point& x,
                                      double tol) {
  SpinConnectionAtPoint sc;
  sc.geo = point_geometry(s, t, x, tol);
  const PointGeometry& g = sc.geo;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      // Coordinate components of D_{e_a} e_b.
      Vec4 d = Vec4::Zero();
      for (int gam = 0; gam < 4; ++gam) {
        double v = 0.0;
        for (int nu = 0; nu < 4; ++nu) {
          v += g.h_inv(nu, a) * g.dh_inv[nu](gam, b);
          for (int mu = 0; mu < 4; ++mu) v += g.h_inv(nu, a) * g.gamma[gam](nu, mu) * g.h_inv(mu, b);
        }
        d(gam) = v;
      }
      const Vec4 frame = g.h * d;
      for (int c = 0; c < 4; ++c) sc.coeff[a][b][c] = frame(c);
    }
  }
  assemble(sc);
  return sc;
}

SpinConnectionAtPoint spin_connection_from_coefficients(const Coeff3& coeff) {
  SpinConnectionAtPoint sc;
  PointGeometry& g = sc.geo;
  g.g = eta();
  g.g_inv = eta();
  for (auto& m : g.gamma) m.setZero();
  g.h = Mat4::Identity();
  g.h_inv = Mat4::Identity();
  for (int nu = 0; nu < 4; ++nu) {
    g.dh[nu].setZero();
    g.dh_inv[nu].setZero();
    g.dq_up[nu].setZero();
  }
  sc.coeff = coeff;
  assemble(sc);
  return sc;
}

double antisymmetry_residual(const SpinConnectionAtPoint& sc) {
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        worst = std::max(worst, std::abs(sc.lowered[a][b][c] + sc.lowered[a][c][b]));
      }
    }
  }
  return worst;
}

double frame_derivative_norm(const SpinConnectionAtPoint& sc, int a, int b) {
  double worst = 0.0;
  for (int c = 0; c < 4; ++c) worst = std::max(worst, std::abs(sc.coeff[a][b][c]));
  return worst;
}

Multivector dagger(const Multivector& x) { return -(sta::m_up(0) * x * sta::m_up(0)); }

HermitianResiduals hermitian_checks(const Multivector& bivector) {
  const C2Matrix om = rep(bivector);
  const C2Matrix& eps = epsilon();
  HermitianResiduals r;
  r.dagger_rep = max_abs(C2Matrix(rep(dagger(bivector)) - om.adjoint()));
  r.epsilon_conjugate = max_abs(C2Matrix(om - eps * om.adjoint() * eps));
  r.epsilon_transpose = max_abs(C2Matrix(om - eps * om.transpose() * eps));
  return r;
}

HermitianResiduals hermitian_checks(const SpinConnectionAtPoint& sc) {
  HermitianResiduals worst;
  for (int a = 0; a < 4; ++a) {
    const HermitianResiduals r = hermitian_checks(sc.frame[a]);
    worst.dagger_rep = std::max(worst.dagger_rep, r.dagger_rep);
    worst.epsilon_conjugate = std::max(worst.epsilon_conjugate, r.epsilon_conjugate);
    worst.epsilon_transpose = std::max(worst.epsilon_transpose, r.epsilon_transpose);
  }
  return worst;
}

Multivector frame_directional_derivative(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                         const MultivectorField& f) {
  Multivector out = zero();
  for (int nu = 0; nu < 4; ++nu) {
    const double w = sc.geo.h_inv(nu, a);
    if (w == 0.0) continue;
    out += w * partial(f, sc.geo.x, nu, s.domain());
  }
  return out;
}

AlgebraicSpinor cov_deriv_spinor(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                 const MultivectorField& phi) {
  return AlgebraicSpinor(frame_directional_derivative(s, sc, a, phi) +
                         0.5 * (sc.frame[a] * phi(sc.geo.x)));
}

DottedAlgebraicSpinor cov_deriv_dotted(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                       const MultivectorField& xi) {
  return DottedAlgebraicSpinor(frame_directional_derivative(s, sc, a, xi) -
                               0.5 * (xi(sc.geo.x) * sc.frame[a]));
}

Multivector cov_deriv_pauli(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                            const MultivectorField& p) {
  return frame_directional_derivative(s, sc, a, p) + 0.5 * commutator(sc.frame[a], p(sc.geo.x));
}

double leibniz_iota_residual(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                             const MultivectorField& phi, const MultivectorField& xi) {
  const Point& x = sc.geo.x;
  MultivectorField product = [&](const Point& y) { return phi(y) * xi(y); };
  const Multivector lhs = cov_deriv_pauli(s, sc, a, product);
  const AlgebraicSpinor dphi = cov_deriv_spinor(s, sc, a, phi);
  const DottedAlgebraicSpinor dxi = cov_deriv_dotted(s, sc, a, xi);
  const Multivector rhs = iota(dphi, DottedAlgebraicSpinor(xi(x))) +
                          iota(AlgebraicSpinor(phi(x)), dxi);
  return max_abs_diff(lhs, rhs);
}

double leibniz_product_residual(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                const MultivectorField& p, const MultivectorField& q) {
  const Point& x = sc.geo.x;
  MultivectorField product = [&](const Point& y) { return p(y) * q(y); };
  const Multivector lhs = cov_deriv_pauli(s, sc, a, product);
  const Multivector rhs = cov_deriv_pauli(s, sc, a, p) * q(x) + p(x) * cov_deriv_pauli(s, sc, a, q);
  return max_abs_diff(lhs, rhs);
}

Multivector q_partial(const SpinConnectionAtPoint& sc, int mu, int nu) {
  Multivector out = zero();
  for (int a = 0; a < 4; ++a) out += sc.geo.dh[nu](a, mu) * sta::sigma(a);
  return out;
}

Multivector sachs_deriv_q(const SpinConnectionAtPoint& sc, int mu, int nu) {
  const Multivector q = q_low(sc, mu);
  const Multivector& w = sc.coordinate[nu];
  return q_partial(sc, mu, nu) + 0.5 * (w * q) + 0.5 * (q * dagger(w));
}

Multivector clifford_deriv_q(const SpinConnectionAtPoint& sc, int mu, int nu) {
  return q_partial(sc, mu, nu) + 0.5 * commutator(sc.coordinate[nu], q_low(sc, mu));
}

Multivector gamma_q(const SpinConnectionAtPoint& sc, int mu, int nu) {
  Multivector out = zero();
  for (int alpha = 0; alpha < 4; ++alpha) out += sc.geo.gamma[alpha](nu, mu) * q_low(sc, alpha);
  return out;
}

Multivector e_mu_d_e0(const SpinConnectionAtPoint& sc, int mu, int nu) {
  Multivector e_mu = zero();
  Multivector d_e0 = zero();
  for (int a = 0; a < 4; ++a) {
    e_mu += sc.geo.h(a, mu) * sta::m(a);
    for (int c = 0; c < 4; ++c) d_e0 += (sc.geo.h(a, nu) * sc.coeff[a][0][c]) * sta::m(c);
  }
  return e_mu * d_e0;
}

Multivector product_rule_residual(const SpinConnectionAtPoint& sc, int mu, int nu) {
  return clifford_deriv_q(sc, mu, nu) - gamma_q(sc, mu, nu) - e_mu_d_e0(sc, mu, nu);
}

Multivector sachs_total_deriv(const SpinConnectionAtPoint& sc, int mu, int nu) {
  return sachs_deriv_q(sc, mu, nu) - gamma_q(sc, mu, nu);
}

C2Matrix sachs_total_deriv_matrix(const SpinConnectionAtPoint& sc, int mu, int nu) {
  const C2Matrix q = rep(q_low(sc, mu));
  const C2Matrix& om = sc.coordinate_matrix[nu];
  return rep(q_partial(sc, mu, nu)) + 0.5 * om * q + 0.5 * q * om.adjoint() -
         rep(gamma_q(sc, mu, nu));
}

Multivector omega_from_q(const SpinConnectionAtPoint& sc, int rho) {
  Multivector out = zero();
  for (int mu = 0; mu < 4; ++mu) out += q_check(sc, mu) * covariant_q_up(sc, mu, rho);
  return -0.5 * out;
}

Multivector omega_from_q_right(const SpinConnectionAtPoint& sc, int rho) {
  Multivector out = zero();
  for (int mu = 0; mu < 4; ++mu) out += covariant_q_up(sc, mu, rho) * q_check(sc, mu);
  return 0.5 * out;
}

TraceResiduals trace_identities(const SpinConnectionAtPoint& sc) {
  TraceResiduals r;
  Multivector qq = zero();
  C2Matrix mqq = C2Matrix::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    qq += q_up(sc, mu) * q_check(sc, mu);
    mqq += rep(q_up(sc, mu)) * rep(q_check(sc, mu));
  }
  r.q_qcheck = max_abs(qq + Multivector::scalar(sta::signature(), 4.0));
  r.matrix_q_qcheck = max_abs(C2Matrix(mqq + 4.0 * C2Matrix::Identity()));
  for (int rho = 0; rho < 4; ++rho) {
    Multivector sum = zero();
    C2Matrix msum = C2Matrix::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      sum += q_up(sc, mu) * sc.coordinate[rho] * q_check(sc, mu);
      msum += rep(q_up(sc, mu)) * sc.coordinate_matrix[rho] * rep(q_check(sc, mu));
    }
    r.q_omega_qcheck = std::max(r.q_omega_qcheck, max_abs(sum));
    r.matrix_q_omega_qcheck = std::max(r.matrix_q_omega_qcheck, max_abs(msum));
  }
  return r;
}

double dirac_identity_residual(const SpinConnectionAtPoint& sc, int a, int b) {
  Multivector lhs = zero();
  for (int c = 0; c < 4; ++c) lhs += sc.coeff[a][b][c] * sta::m(c);
  const Multivector& w = sc.frame[a];
  lhs -= 0.5 * (w * sta::m(b));
  lhs += 0.5 * (sta::m(b) * w);
  return max_abs(lhs);
}

double dirac_identity_matrix_residual(const SpinConnectionAtPoint& sc, int a, int b) {
  C2Matrix lhs = C2Matrix::Zero();
  for (int c = 0; c < 4; ++c) lhs += sc.coeff[a][b][c] * rep(sta::sigma(c));
  const C2Matrix& om = sc.frame_matrix[a];
  const C2Matrix sb = rep(sta::sigma(b));
  lhs -= 0.5 * om * sb;
  lhs -= 0.5 * sb * om.adjoint();
  return max_abs(lhs);
}

}  // namespace spinor_forge
