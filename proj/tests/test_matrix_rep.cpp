#include <random>

#include "doctest.h"
#include "spinor_forge/matrix_rep.hpp"
#include "spinor_forge/spinor_ideals.hpp"

using namespace spinor_forge;

namespace {

const Complex I(0.0, 1.0);

C2Matrix mat(Complex a, Complex b, Complex c, Complex d) {
  C2Matrix m;
  m << a, b, c, d;
  return m;
}

Multivector random_even(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 16> c{};
  for (unsigned k = 0; k < 16; ++k) {
    if (grade_of(k) % 2 == 0) c[k] = u(rng);
  }
  return Multivector(sta::signature(), c);
}

}  // namespace

TEST_CASE("Pauli matrices and epsilon are the textbook ones") {
  CHECK(max_abs(C2Matrix(pauli_matrix(0) - C2Matrix::Identity())) == 0.0);
  CHECK(max_abs(C2Matrix(pauli_matrix(1) - mat(0, 1, 1, 0))) == 0.0);
  CHECK(max_abs(C2Matrix(pauli_matrix(2) - mat(0, -I, I, 0))) == 0.0);
  CHECK(max_abs(C2Matrix(pauli_matrix(3) - mat(1, 0, 0, -1))) == 0.0);
  CHECK(max_abs(C2Matrix(epsilon() - mat(0, 1, -1, 0))) == 0.0);
  CHECK_THROWS_AS(pauli_matrix(4), std::out_of_range);
}

TEST_CASE("rep on generators") {
  for (int k = 1; k < 4; ++k) {
    CHECK(max_abs(C2Matrix(rep(sta::sigma_up(k)) - pauli_matrix(k))) == 0.0);
    CHECK(max_abs(C2Matrix(rep(sta::sigma(k)) + pauli_matrix(k))) == 0.0);
  }
  CHECK(max_abs(C2Matrix(rep(sta::pseudoscalar()) - I * C2Matrix::Identity())) == 0.0);
  CHECK(max_abs(C2Matrix(rep(sta::e_plus()) - mat(0, 0, 0, 1))) == 0.0);
  CHECK(max_abs(C2Matrix(rep(sta::e_minus()) - mat(1, 0, 0, 0))) == 0.0);
  // spatial bivectors: m_j m_k = -sigma_j sigma_k
  for (int j = 1; j < 4; ++j) {
    for (int k = 1; k < 4; ++k) {
      if (j == k) continue;
      const C2Matrix expected = -(pauli_matrix(j) * pauli_matrix(k));
      CHECK(max_abs(C2Matrix(rep(sta::m(j) * sta::m(k)) - expected)) == 0.0);
    }
  }
}

TEST_CASE("rep rejects odd and foreign elements") {
  CHECK_THROWS_AS(rep(sta::m(0)), NotEvenError);
  CHECK_THROWS_AS(rep(Multivector::scalar(Signature(3, 0), 1.0)), SignatureError);
}

TEST_CASE("rep is multiplicative and unrep inverts it") {
  std::mt19937_64 rng(21);
  for (int n = 0; n < 100; ++n) {
    const Multivector a = random_even(rng);
    const Multivector b = random_even(rng);
    CHECK(max_abs(C2Matrix(rep(a * b) - rep(a) * rep(b))) < 1e-12);
    CHECK(max_abs_diff(unrep(rep(a)), a) < 1e-14);
  }
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const C2Matrix m = mat({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
  CHECK(max_abs(C2Matrix(rep(unrep(m)) - m)) < 1e-14);
}

TEST_CASE("spinor columns and rows") {
  const ColumnSpinor c(Complex(1.5, -0.5), Complex(0.25, 2.0));
  const Multivector phi = left_ideal_from_column(c);
  CHECK(max_abs_diff(phi * sta::e_plus(), phi) < 1e-15);
  CHECK((column_of(phi) - c).cwiseAbs().maxCoeff() < 1e-15);
  // first column of rep(phi) vanishes for ideal elements
  CHECK(rep(phi).col(0).cwiseAbs().maxCoeff() < 1e-15);

  const RowSpinor r(Complex(-1.0, 0.5), Complex(3.0, 0.0));
  const Multivector xi = right_ideal_from_row(r);
  CHECK(max_abs_diff(sta::e_plus() * xi, xi) < 1e-15);
  CHECK((row_of(xi) - r).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(max_abs(C2Matrix(kronecker(c, r) - c * r)) == 0.0);
  CHECK(max_abs(C2Matrix(rep(phi * xi) - kronecker(c, r))) < 1e-14);
}

TEST_CASE("epsilon index gymnastics") {
  const ColumnSpinor up(Complex(2.0, 1.0), Complex(-3.0, 0.5));
  const RowSpinor low = lower_index(up);
  // phi_1 = phi^2 eps_21 = -phi^2, phi_2 = phi^1 eps_12 = phi^1
  CHECK(std::abs(low(0) + up(1)) == 0.0);
  CHECK(std::abs(low(1) - up(0)) == 0.0);
  const ColumnSpinor back = raise_index(low);
  CHECK((back - static_cast<double>(raise_lower_sign()) * up).cwiseAbs().maxCoeff() == 0.0);
  CHECK(raise_lower_sign() == 1);

  const RowSpinor dotted = dotted_of(up);
  CHECK(std::abs(dotted(0) + std::conj(up(1))) == 0.0);
  CHECK(std::abs(dotted(1) - std::conj(up(0))) == 0.0);
  // the spinor inner product is antisymmetric
  const ColumnSpinor other(Complex(0.5, 0.5), Complex(1.0, -2.0));
  const Complex ab = lower_index(up) * other;
  const Complex ba = lower_index(other) * up;
  CHECK(std::abs(ab + ba) < 1e-15);
}
