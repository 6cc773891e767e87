#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "spinor_forge/spacetimes.hpp"
#include "spinor_forge/spin_connection.hpp"

using namespace spinor_forge;

namespace {

// Oracle: omega^c_{ab} = h^c_g (e_a(h_b^g) + Gamma^g_{nu mu} h_a^nu h_b^mu)
// with second-order differences of the inverse tetrad.
Coeff3 oracle_coefficients(const Spacetime& s, const Tetrad& t, const Point& x) {
  const double step = 1e-5;
  const Mat4 h = t.h(x);
  const Mat4 e = t.inverse(x);
  std::array<Mat4, 4> de;
  for (int nu = 0; nu < 4; ++nu) {
    Point p = x;
    Point m = x;
    p[nu] += step;
    m[nu] -= step;
    de[nu] = (t.inverse(p) - t.inverse(m)) / (2.0 * step);
  }
  const Christoffel gamma = christoffel(s, x);
  Coeff3 out{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Vec4 v = Vec4::Zero();  // coordinate components of D_{e_a} e_b
      for (int g = 0; g < 4; ++g) {
        for (int nu = 0; nu < 4; ++nu) {
          v(g) += e(nu, a) * de[nu](g, b);
          for (int mu = 0; mu < 4; ++mu) v(g) += gamma[g](nu, mu) * e(nu, a) * e(mu, b);
        }
      }
      const Vec4 framed = h * v;
      for (int c = 0; c < 4; ++c) out[a][b][c] = framed(c);
    }
  }
  return out;
}

Coeff3 random_connection(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double eta_d[4] = {1, -1, -1, -1};
  Coeff3 c{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int d = b + 1; d < 4; ++d) {
        // lowered coefficients antisymmetric in (b, c)
        const double w = u(rng);
        c[a][b][d] = w / eta_d[d];
        c[a][d][b] = -w / eta_d[b];
      }
    }
  }
  return c;
}

const Point kSchwarzschildPoint{0.3, 7.5, 1.2, 0.4};
const Point kEdsPoint{1.0, 0.2, -0.4, 1.5};

}  // namespace

TEST_CASE("comoving connection in Einstein-de Sitter") {
  const SpinConnectionAtPoint sc = spin_connection(einstein_de_sitter(), comoving_tetrad(), kEdsPoint);
  for (int i = 1; i < 4; ++i) {
    CHECK(sc.coeff[i][i][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(sc.coeff[i][0][i] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }
  for (int a = 0; a < 4; ++a) CHECK(frame_derivative_norm(sc, 0, a) < 1e-10);
  CHECK(frame_derivative_norm(sc, 1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("connection coefficients match the oracle") {
  const SpinConnectionAtPoint sc = spin_connection(schwarzschild(1.0), static_tetrad(1.0), kSchwarzschildPoint);
  const Coeff3 oracle = oracle_coefficients(schwarzschild(1.0), static_tetrad(1.0), kSchwarzschildPoint);
  double diff = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) diff = std::max(diff, std::abs(sc.coeff[a][b][c] - oracle[a][b][c]));
    }
  }
  CHECK(diff < 1e-8);
  CHECK(antisymmetry_residual(sc) < 1e-10);
  // static observers accelerate outward: D_{e_0} e_0 = M / (r^2 sqrt f) e_1
  const double r = kSchwarzschildPoint[1];
  CHECK(sc.coeff[0][0][1] == doctest::Approx(1.0 / (r * r * std::sqrt(1.0 - 2.0 / r))).epsilon(1e-8));
}

TEST_CASE("bivector commutator reproduces the coefficients") {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 20; ++n) {
    const SpinConnectionAtPoint sc = spin_connection_from_coefficients(random_connection(rng));
    for (int a = 0; a < 4; ++a) {
      CHECK(max_abs(sc.frame[a] - grade_projection(sc.frame[a], 2)) == 0.0);
      CHECK(max_abs(C2Matrix(sc.frame_matrix[a] - rep(sc.frame[a]))) < 1e-14);
      for (int b = 0; b < 4; ++b) {
        Multivector expected(sta::signature());
        for (int c = 0; c < 4; ++c) expected += sc.coeff[a][b][c] * sta::m(c);
        CHECK(max_abs_diff(0.5 * commutator(sc.frame[a], sta::m(b)), expected) < 1e-14);
        CHECK(dirac_identity_residual(sc, a, b) < 1e-14);
        CHECK(dirac_identity_matrix_residual(sc, a, b) < 1e-14);
      }
    }
  }
}

TEST_CASE("Hermitian structure of bivector images") {
  std::mt19937_64 rng(6);
  for (int n = 0; n < 20; ++n) {
    const SpinConnectionAtPoint sc = spin_connection_from_coefficients(random_connection(rng));
    const HermitianResiduals h = hermitian_checks(sc);
    CHECK(h.dagger_rep < 1e-14);
    CHECK(h.epsilon_transpose < 1e-14);
  }
  const Multivector boost = sta::m(0) * sta::m(1);
  const Multivector rotation = sta::m(1) * sta::m(2);
  CHECK(max_abs_diff(dagger(boost), boost) == 0.0);
  CHECK(max_abs_diff(dagger(rotation), -1.0 * rotation) == 0.0);
  // eps Omega^H eps = conj(Omega): only real matrix images pass the literal form
  CHECK(hermitian_checks(boost).epsilon_conjugate == 0.0);
  CHECK(hermitian_checks(rotation).epsilon_conjugate == doctest::Approx(2.0));
}

TEST_CASE("paravector derivative identities") {
  struct Case {
    Spacetime s;
    Tetrad t;
    Point x;
  };
  const Case cases[] = {
      {schwarzschild(1.0), static_tetrad(1.0), kSchwarzschildPoint},
      {einstein_de_sitter(), comoving_tetrad(), kEdsPoint},
      {schwarzschild(2.0), orthonormal_tetrad(schwarzschild(2.0)), {0.0, 20.0, 2.0, 1.0}},
  };
  for (const Case& c : cases) {
    CAPTURE(c.s.name());
    const SpinConnectionAtPoint sc = spin_connection(c.s, c.t, c.x);
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = 0; nu < 4; ++nu) {
        CHECK(max_abs(sachs_total_deriv(sc, mu, nu)) < 1e-8);
        CHECK(max_abs(C2Matrix(sachs_total_deriv_matrix(sc, mu, nu))) < 1e-8);
        CHECK(max_abs(product_rule_residual(sc, mu, nu)) < 1e-8);
      }
    }
    for (int rho = 0; rho < 4; ++rho) {
      CHECK(max_abs_diff(omega_from_q_right(sc, rho), sc.coordinate[rho]) < 1e-8);
      // the left-sided reconstruction returns minus the dagger
      CHECK(max_abs_diff(omega_from_q(sc, rho), -1.0 * dagger(sc.coordinate[rho])) < 1e-8);
    }
    const TraceResiduals tr = trace_identities(sc);
    CHECK(tr.q_qcheck < 1e-12);
    CHECK(tr.q_omega_qcheck < 1e-12);
    CHECK(tr.matrix_q_qcheck < 1e-12);
    CHECK(tr.matrix_q_omega_qcheck < 1e-12);
  }
}

TEST_CASE("left reconstruction differs from the connection when boosts are present") {
  const SpinConnectionAtPoint sc = spin_connection(einstein_de_sitter(), comoving_tetrad(), kEdsPoint);
  double worst = 0.0;
  for (int rho = 0; rho < 4; ++rho) worst = std::max(worst, max_abs_diff(omega_from_q(sc, rho), sc.coordinate[rho]));
  CHECK(worst > 0.1);
}

TEST_CASE("covariant derivatives") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Spacetime s = schwarzschild(1.0);
  const SpinConnectionAtPoint sc = spin_connection(s, static_tetrad(1.0), kSchwarzschildPoint);

  auto random_linear_field = [&](bool left_ideal, bool right_ideal) {
    std::array<std::array<double, 5>, 16> c{};
    for (auto& row : c) {
      for (double& v : row) v = u(rng);
    }
    return MultivectorField([c, left_ideal, right_ideal](const Point& y) {
      Multivector out(sta::signature());
      for (unsigned mask = 0; mask < 16; ++mask) {
        if (grade_of(mask) % 2 != 0) continue;
        double v = c[mask][4];
        for (int k = 0; k < 4; ++k) v += 0.1 * c[mask][k] * y[k];
        out += Multivector::blade(sta::signature(), mask, v);
      }
      if (left_ideal) out = out * sta::e_plus();
      if (right_ideal) out = sta::e_plus() * out;
      return out;
    });
  };

  for (int trial = 0; trial < 5; ++trial) {
    const MultivectorField phi = random_linear_field(true, false);
    const MultivectorField xi = random_linear_field(false, true);
    const MultivectorField p = random_linear_field(false, false);
    const MultivectorField q = random_linear_field(false, false);
    for (int a = 0; a < 4; ++a) {
      CHECK(leibniz_iota_residual(s, sc, a, phi, xi) < 1e-8);
      CHECK(leibniz_product_residual(s, sc, a, p, q) < 1e-8);
      // D of a spinor stays in the ideal
      const AlgebraicSpinor d = cov_deriv_spinor(s, sc, a, phi);
      CHECK(max_abs_diff(d.value() * sta::e_plus(), d.value()) < 1e-12);
    }
  }

  // a constant field has D_a P = 1/2 [omega_a, P]
  const Multivector p0 = sta::sigma(2);
  const MultivectorField constant = [p0](const Point&) { return p0; };
  for (int a = 0; a < 4; ++a) {
    CHECK(max_abs_diff(cov_deriv_pauli(s, sc, a, constant), 0.5 * commutator(sc.frame[a], p0)) < 1e-12);
    CHECK(max_abs(frame_directional_derivative(s, sc, a, constant)) == 0.0);
  }
}

TEST_CASE("flat inertial connection vanishes") {
  const SpinConnectionAtPoint sc = spin_connection(minkowski(), inertial_tetrad(), {0.1, 0.2, 0.3, 0.4});
  for (int a = 0; a < 4; ++a) {
    CHECK(max_abs(sc.frame[a]) == 0.0);
    for (int b = 0; b < 4; ++b) CHECK(frame_derivative_norm(sc, a, b) == 0.0);
  }
}
