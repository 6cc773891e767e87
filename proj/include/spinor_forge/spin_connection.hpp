#pragma once

#include <array>
#include <functional>

#include "spinor_forge/clifford.hpp"
#include "spinor_forge/geometry.hpp"
#include "spinor_forge/matrix_rep.hpp"
#include "spinor_forge/spinor_ideals.hpp"

namespace spinor_forge {

/// Geometric data gathered once per point.
struct PointGeometry {
  Point x{};
  Mat4 g;
  Mat4 g_inv;
  Christoffel gamma;
  Mat4 h;      // h^a_mu at (a, mu)
  Mat4 h_inv;  // h_a^mu at (mu, a)
  std::array<Mat4, 4> dh;      // d_nu h^a_mu
  std::array<Mat4, 4> dh_inv;  // d_nu h_a^mu
  /// d_nu of the contravariant paravector components g^{mu kappa} h^a_kappa,
  /// stored at (mu, a).
  std::array<Mat4, 4> dq_up;
};

/// Throws GeometryError when the tetrad misses the metric by more than tol.
PointGeometry point_geometry(const Spacetime& s, const Tetrad& t, const Point& x, double tol = 1e-9);

using Coeff3 = std::array<std::array<std::array<double, 4>, 4>, 4>;

struct SpinConnectionAtPoint {
  PointGeometry geo;
  /// coeff[a][b][c] = omega^c_{ab}: D_{e_a} e_b = omega^c_{ab} e_c.
  Coeff3 coeff{};
  /// lowered[a][b][c] = eta_cc omega^c_{ab}; antisymmetric in (b, c).
  Coeff3 lowered{};
  /// omega_{e_a} = 1/2 W_a^{cd} m_c m_d with W_a^{cd} = omega^c_{ab} eta^{bd}.
  std::array<Multivector, 4> frame;
  std::array<C2Matrix, 4> frame_matrix;
  /// omega_mu = h^a_mu omega_{e_a}.
  std::array<Multivector, 4> coordinate;
  std::array<C2Matrix, 4> coordinate_matrix;
};

SpinConnectionAtPoint spin_connection(const Spacetime& s, const Tetrad& t, const Point& x,
                                      double tol = 1e-9);
/// Builds the bivectors and matrices from given omega^c_{ab}, with the
/// tetrad taken as the identity. Used for synthetic connections in tests.
SpinConnectionAtPoint spin_connection_from_coefficients(const Coeff3& coeff);

/// max |lowered[a][b][c] + lowered[a][c][b]|.
double antisymmetry_residual(const SpinConnectionAtPoint& sc);
/// max_abs(D_{e_a} e_b) for the pair (a, b): max |omega^c_{ab}|.
double frame_derivative_norm(const SpinConnectionAtPoint& sc, int a, int b);

/// -m^0 X m^0.
Multivector dagger(const Multivector& x);

struct HermitianResiduals {
  /// max |rep(-m^0 omega m^0) - Omega^H|.
  double dagger_rep = 0.0;
  /// max |Omega - eps Omega^H eps|.
  double epsilon_conjugate = 0.0;
  /// max |Omega - eps Omega^T eps|.
  double epsilon_transpose = 0.0;
};
HermitianResiduals hermitian_checks(const SpinConnectionAtPoint& sc);
HermitianResiduals hermitian_checks(const Multivector& bivector);

using MultivectorField = std::function<Multivector(const Point&)>;

/// d_a F = h_a^nu d_nu F, coefficientwise.
Multivector frame_directional_derivative(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                         const MultivectorField& f);

/// d_a phi + 1/2 omega_{e_a} phi.
AlgebraicSpinor cov_deriv_spinor(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                 const MultivectorField& phi);
/// d_a xi - 1/2 xi omega_{e_a}.
DottedAlgebraicSpinor cov_deriv_dotted(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                       const MultivectorField& xi);
/// d_a P + 1/2 [omega_{e_a}, P].
Multivector cov_deriv_pauli(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                            const MultivectorField& p);
/// max_abs of D(phi xi) - (D phi) xi - phi (D xi).
double leibniz_iota_residual(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                             const MultivectorField& phi, const MultivectorField& xi);
/// max_abs of D(P Q) - (D P) Q - P (D Q).
double leibniz_product_residual(const Spacetime& s, const SpinConnectionAtPoint& sc, int a,
                                const MultivectorField& p, const MultivectorField& q);

/// d_nu q_mu.
Multivector q_partial(const SpinConnectionAtPoint& sc, int mu, int nu);
/// d_nu q_mu + 1/2 omega_nu q_mu + 1/2 q_mu omega_nu^dagger.
Multivector sachs_deriv_q(const SpinConnectionAtPoint& sc, int mu, int nu);
/// d_nu q_mu + 1/2 [omega_nu, q_mu], the derivation extended to the Clifford
/// product q_mu = e_mu m_0.
Multivector clifford_deriv_q(const SpinConnectionAtPoint& sc, int mu, int nu);
/// Gamma^alpha_{nu mu} q_alpha.
Multivector gamma_q(const SpinConnectionAtPoint& sc, int mu, int nu);
/// e_mu (D_nu e_0) with e_mu = h^a_mu m_a.
Multivector e_mu_d_e0(const SpinConnectionAtPoint& sc, int mu, int nu);
/// clifford_deriv_q - gamma_q - e_mu_d_e0.
Multivector product_rule_residual(const SpinConnectionAtPoint& sc, int mu, int nu);
/// sachs_deriv_q - gamma_q.
Multivector sachs_total_deriv(const SpinConnectionAtPoint& sc, int mu, int nu);
/// Matrix image rep of sachs_total_deriv computed with Omega and Omega^H.
C2Matrix sachs_total_deriv_matrix(const SpinConnectionAtPoint& sc, int mu, int nu);

/// -1/2 qcheck_mu (d_rho q^mu + Gamma^mu_{rho tau} q^tau).
Multivector omega_from_q(const SpinConnectionAtPoint& sc, int rho);
/// 1/2 (d_rho q^mu + Gamma^mu_{rho tau} q^tau) qcheck_mu.
Multivector omega_from_q_right(const SpinConnectionAtPoint& sc, int rho);

struct TraceResiduals {
  double q_qcheck = 0.0;         // max_abs(q^mu qcheck_mu + 4)
  double q_omega_qcheck = 0.0;   // max over rho of max_abs(q^mu omega_rho qcheck_mu)
  double matrix_q_qcheck = 0.0;  // matrix image of the first
  double matrix_q_omega_qcheck = 0.0;
};
TraceResiduals trace_identities(const SpinConnectionAtPoint& sc);

/// max_abs(omega^c_{ab} m_c - 1/2 omega_{e_a} m_b + 1/2 m_b omega_{e_a}).
double dirac_identity_residual(const SpinConnectionAtPoint& sc, int a, int b);
/// Even image: max |omega^c_{ab} rep(sigma_c) - 1/2 Omega_a rep(sigma_b)
/// - 1/2 rep(sigma_b) Omega_a^H|, from the odd identity multiplied by m_0.
double dirac_identity_matrix_residual(const SpinConnectionAtPoint& sc, int a, int b);

}  // namespace spinor_forge
